// Python bindings for the gridloc core: grids, models, decoders, baselines,
// the scenario simulator and metrics.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridloc/runner.hpp"

namespace py = pybind11;
using namespace gridloc;

PYBIND11_MODULE(_gridloc, m) {
  m.doc() = "Grid-HMM target localization from anchor range measurements";

  py::register_exception<Error>(m, "GridlocError");

  py::class_<GridSpec>(m, "GridSpec")
      .def_readonly("origin", &GridSpec::origin)
      .def_readonly("width", &GridSpec::width)
      .def_readonly("height", &GridSpec::height)
      .def_readonly("resolution", &GridSpec::resolution)
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("ny", &GridSpec::ny)
      .def_property_readonly("cell_count", &GridSpec::cell_count)
      .def("cell_center", &GridSpec::cell_center, py::arg("cell"))
      .def("contains", &GridSpec::contains, py::arg("position"))
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(" + std::to_string(g.nx) + "x" + std::to_string(g.ny) +
               " @ " + std::to_string(g.resolution) + " m)";
      });

  py::class_<ResolutionLadder>(m, "ResolutionLadder")
      .def_readonly("levels", &ResolutionLadder::levels)
      .def_property_readonly("level_count", &ResolutionLadder::level_count)
      .def_property_readonly("coarsest", &ResolutionLadder::coarsest)
      .def_property_readonly("finest", &ResolutionLadder::finest);

  m.def("build_grid", &build_grid, py::arg("origin"), py::arg("width"),
        py::arg("height"), py::arg("resolution"));
  m.def("build_ladder", &build_ladder, py::arg("origin"), py::arg("width"),
        py::arg("height"), py::arg("finest_resolution"),
        py::arg("level_count"));
  m.def("children", &children, py::arg("ladder"), py::arg("level"),
        py::arg("parent"));
  m.def("parent", &parent, py::arg("ladder"), py::arg("level"),
        py::arg("child"));
  m.def("locate", &locate, py::arg("grid"), py::arg("position"));

  py::class_<HmmParams>(m, "HmmParams")
      .def(py::init<>())
      .def_readwrite("sigma_x", &HmmParams::sigma_x)
      .def_readwrite("sigma_o", &HmmParams::sigma_o)
      .def_readwrite("sample_interval", &HmmParams::sample_interval)
      .def_readwrite("speed", &HmmParams::speed);

  py::class_<Anchor>(m, "Anchor")
      .def(py::init([](int id, const Vec2& position) {
             return Anchor{id, position};
           }),
           py::arg("id"), py::arg("position"))
      .def_readwrite("id", &Anchor::id)
      .def_readwrite("position", &Anchor::position);

  py::class_<MeasurementFrame>(m, "MeasurementFrame")
      .def(py::init([](double time) {
             MeasurementFrame f;
             f.time = time;
             return f;
           }),
           py::arg("time") = 0.0)
      .def_readwrite("time", &MeasurementFrame::time)
      .def_readonly("ranges", &MeasurementFrame::ranges)
      .def("add_range", &MeasurementFrame::add_range, py::arg("anchor_id"),
           py::arg("range"))
      .def_property_readonly("connected_count",
                             &MeasurementFrame::connected_count);

  m.def("transition_logprob", &transition_logprob, py::arg("grid"),
        py::arg("from_cell"), py::arg("to_cell"), py::arg("params"));
  m.def("observation_logprob", &observation_logprob, py::arg("grid"),
        py::arg("cell"), py::arg("frame"), py::arg("anchors"),
        py::arg("params"));
  m.def("observation_logprob_point", &observation_logprob_point,
        py::arg("position"), py::arg("frame"), py::arg("anchors"),
        py::arg("params"));
  m.def("best_anchor_subset", &best_anchor_subset, py::arg("grid"),
        py::arg("cell"), py::arg("frame"), py::arg("anchors"),
        py::arg("params"));

  py::class_<DecodeCounters>(m, "DecodeCounters")
      .def_readonly("transitions", &DecodeCounters::transitions)
      .def_readonly("observations", &DecodeCounters::observations)
      .def_readonly("backpointer_cells", &DecodeCounters::backpointer_cells);

  py::class_<MapTrajectory>(m, "MapTrajectory")
      .def_readonly("level", &MapTrajectory::level)
      .def_readonly("cells", &MapTrajectory::cells)
      .def_readonly("positions", &MapTrajectory::positions);

  py::class_<DecodeResult>(m, "DecodeResult")
      .def_readonly("trajectory", &DecodeResult::trajectory)
      .def_readonly("counters", &DecodeResult::counters);

  py::class_<AdaptiveResult>(m, "AdaptiveResult")
      .def_readonly("final", &AdaptiveResult::final)
      .def_readonly("counters", &AdaptiveResult::counters)
      .def_property_readonly("pass_trajectories", [](const AdaptiveResult& r) {
        std::vector<MapTrajectory> trajectories;
        for (const auto& pass : r.passes) {
          trajectories.push_back(pass.trajectory);
        }
        return trajectories;
      });

  m.def("decode", &decode, py::arg("grid"), py::arg("frames"),
        py::arg("anchors"), py::arg("params"), py::arg("keep_history") = true);
  m.def("decode_adaptive", &decode_adaptive, py::arg("ladder"),
        py::arg("frames"), py::arg("anchors"), py::arg("params"));
  m.def("trajectory_score", &trajectory_score, py::arg("grid"),
        py::arg("frames"), py::arg("anchors"), py::arg("params"),
        py::arg("cells"));

  py::class_<DivergenceReport>(m, "DivergenceReport")
      .def_readonly("mean_distance", &DivergenceReport::mean_distance)
      .def_readonly("conventional", &DivergenceReport::conventional)
      .def_readonly("adaptive", &DivergenceReport::adaptive)
      .def_readonly("conventional_seconds",
                    &DivergenceReport::conventional_seconds)
      .def_readonly("adaptive_seconds", &DivergenceReport::adaptive_seconds);
  m.def("compare_decodes", &compare_decodes, py::arg("grid_fine"),
        py::arg("ladder"), py::arg("frames"), py::arg("anchors"),
        py::arg("params"));

  // Preprocessing
  py::class_<RangeSample>(m, "RangeSample")
      .def(py::init([](double time, double range, bool valid) {
             return RangeSample{time, range, valid};
           }),
           py::arg("time"), py::arg("range"), py::arg("valid") = true)
      .def_readwrite("time", &RangeSample::time)
      .def_readwrite("range", &RangeSample::range)
      .def_readwrite("valid", &RangeSample::valid);
  py::class_<RangeSeries>(m, "RangeSeries")
      .def(py::init([](int anchor_id, std::vector<RangeSample> samples) {
             return RangeSeries{anchor_id, std::move(samples)};
           }),
           py::arg("anchor_id"), py::arg("samples"))
      .def_readwrite("anchor_id", &RangeSeries::anchor_id)
      .def_readwrite("samples", &RangeSeries::samples);
  m.def("reject_outliers", &reject_outliers, py::arg("series"),
        py::arg("threshold"));
  m.def("smooth", &smooth, py::arg("series"), py::arg("window"));
  py::class_<PreprocessConfig>(m, "PreprocessConfig")
      .def(py::init<>())
      .def_readwrite("outlier_threshold", &PreprocessConfig::outlier_threshold)
      .def_readwrite("smoothing_window", &PreprocessConfig::smoothing_window);
  m.def("preprocess_frames", &preprocess_frames, py::arg("frames"),
        py::arg("config") = PreprocessConfig{});

  // Baselines
  py::class_<KinematicState>(m, "KinematicState")
      .def(py::init<>())
      .def_readwrite("state", &KinematicState::state)
      .def_readwrite("covariance", &KinematicState::covariance)
      .def_property_readonly("position", &KinematicState::position)
      .def_property_readonly("velocity", &KinematicState::velocity);
  m.def("trilaterate", &trilaterate, py::arg("frame"), py::arg("anchors"));
  py::class_<TrilaterationTrack>(m, "TrilaterationTrack")
      .def_readonly("positions", &TrilaterationTrack::positions)
      .def_readonly("interpolated", &TrilaterationTrack::interpolated);
  m.def("trilaterate_track", &trilaterate_track, py::arg("frames"),
        py::arg("anchors"));
  py::class_<EkfTrack>(m, "EkfTrack")
      .def_readonly("filtered", &EkfTrack::filtered)
      .def_readonly("predicted", &EkfTrack::predicted);
  m.def("ekf_track", &ekf_track, py::arg("frames"), py::arg("anchors"),
        py::arg("init"), py::arg("params"),
        py::arg("accel_noise_density") = -1.0);
  m.def("rts_smooth", &rts_smooth, py::arg("track"));
  py::class_<PfTrack>(m, "PfTrack")
      .def_readonly("positions", &PfTrack::positions)
      .def_readonly("degeneracy_resets", &PfTrack::degeneracy_resets);
  m.def("pf_track", &pf_track, py::arg("frames"), py::arg("anchors"),
        py::arg("origin"), py::arg("width"), py::arg("height"),
        py::arg("particle_count"), py::arg("params"), py::arg("seed"));

  // Simulation
  py::class_<TimedPosition>(m, "TimedPosition")
      .def(py::init([](double time, const Vec2& position) {
             return TimedPosition{time, position};
           }),
           py::arg("time"), py::arg("position"))
      .def_readwrite("time", &TimedPosition::time)
      .def_readwrite("position", &TimedPosition::position);
  py::enum_<EventWindow::Kind>(m, "EventKind")
      .value("Dropout", EventWindow::Kind::Dropout)
      .value("Bias", EventWindow::Kind::Bias);
  py::class_<EventWindow>(m, "EventWindow")
      .def(py::init([](int anchor_id, double t_start, double t_end,
                       EventWindow::Kind kind, double bias) {
             return EventWindow{anchor_id, t_start, t_end, kind, bias};
           }),
           py::arg("anchor_id"), py::arg("t_start"), py::arg("t_end"),
           py::arg("kind") = EventWindow::Kind::Dropout, py::arg("bias") = 0.0)
      .def_readwrite("anchor_id", &EventWindow::anchor_id)
      .def_readwrite("t_start", &EventWindow::t_start)
      .def_readwrite("t_end", &EventWindow::t_end)
      .def_readwrite("kind", &EventWindow::kind)
      .def_readwrite("bias", &EventWindow::bias);
  m.def("gen_trajectory", &gen_trajectory, py::arg("waypoints"),
        py::arg("speed"), py::arg("sample_interval"));
  m.def("simulate_ranges", &simulate_ranges, py::arg("truth"),
        py::arg("anchors"), py::arg("sigma_o"),
        py::arg("events") = std::vector<EventWindow>{}, py::arg("seed") = 0);

  // Metrics
  m.def("rmse", &rmse, py::arg("estimate"), py::arg("truth"));
  m.def("loop_closure_error", &loop_closure_error, py::arg("estimate"));
  m.def("per_step_errors", &per_step_errors, py::arg("estimate"),
        py::arg("truth"));
  m.def("resample_truth", &resample_truth, py::arg("truth"), py::arg("times"));
  m.def("conventional_table_cells", &conventional_table_cells,
        py::arg("cell_count"), py::arg("horizon"));
  m.def("adaptive_table_cells", &adaptive_table_cells, py::arg("coarse_cells"),
        py::arg("levels"), py::arg("horizon"));
  m.def("adaptive_table_cells_all_levels", &adaptive_table_cells_all_levels,
        py::arg("coarse_cells"), py::arg("levels"), py::arg("horizon"));
  m.def("conventional_transitions", &conventional_transitions,
        py::arg("cell_count"), py::arg("horizon"));
  m.def("adaptive_transitions", &adaptive_transitions, py::arg("coarse_cells"),
        py::arg("levels"), py::arg("horizon"));
}
