#include "gridloc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gridloc {

namespace {

constexpr double kFrameTimeTolerance = 1e-6;  // s

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path,
                    int line_number) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError(path.string() + ":" + std::to_string(line_number) +
                     ": bad number '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::filesystem::path& path,
              int line_number) {
  try {
    std::size_t consumed = 0;
    const int value = std::stoi(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError(path.string() + ":" + std::to_string(line_number) +
                     ": bad integer '" + text + "'");
  }
}

// Yields (line_number, fields) for every data row, checking the header.
template <typename RowFn>
void for_each_row(const std::filesystem::path& path,
                  const std::string& expected_header, std::size_t field_count,
                  RowFn&& fn) {
  std::ifstream in = open_input(path);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_number == 1) {
      if (line != expected_header) {
        throw ParseError(path.string() + ":1: expected header '" +
                         expected_header + "', got '" + line + "'");
      }
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != field_count) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": expected " + std::to_string(field_count) +
                       " fields, got " + std::to_string(fields.size()));
    }
    fn(line_number, fields);
  }
}

}  // namespace

std::string format_number(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_anchors_csv(const std::filesystem::path& path,
                       const std::vector<Anchor>& anchors) {
  std::ofstream out = open_output(path);
  out << "id,x,y\n";
  for (const Anchor& a : anchors) {
    out << a.id << ',' << format_number(a.position.x()) << ','
        << format_number(a.position.y()) << '\n';
  }
}

std::vector<Anchor> read_anchors_csv(const std::filesystem::path& path) {
  std::vector<Anchor> anchors;
  for_each_row(path, "id,x,y", 3, [&](int line_number, const auto& fields) {
    Anchor a;
    a.id = parse_int(fields[0], path, line_number);
    a.position = {parse_double(fields[1], path, line_number),
                  parse_double(fields[2], path, line_number)};
    anchors.push_back(a);
  });
  return anchors;
}

void write_ranges_csv(const std::filesystem::path& path,
                      const std::vector<MeasurementFrame>& frames) {
  std::ofstream out = open_output(path);
  out << "t,anchor_id,range\n";
  for (const MeasurementFrame& frame : frames) {
    for (const auto& [id, range] : frame.ranges) {
      out << format_number(frame.time) << ',' << id << ','
          << format_number(range) << '\n';
    }
  }
}

std::vector<MeasurementFrame> read_ranges_csv(
    const std::filesystem::path& path) {
  std::vector<MeasurementFrame> frames;
  for_each_row(path, "t,anchor_id,range", 3,
               [&](int line_number, const auto& fields) {
                 const double t = parse_double(fields[0], path, line_number);
                 const int id = parse_int(fields[1], path, line_number);
                 const double range = parse_double(fields[2], path, line_number);
                 if (frames.empty() ||
                     std::abs(frames.back().time - t) > kFrameTimeTolerance) {
                   frames.push_back(MeasurementFrame{t, {}});
                 }
                 frames.back().add_range(id, range);
               });
  return frames;
}

void write_truth_csv(const std::filesystem::path& path,
                     const std::vector<TimedPosition>& truth) {
  std::ofstream out = open_output(path);
  out << "t,x,y\n";
  for (const TimedPosition& sample : truth) {
    out << format_number(sample.time) << ','
        << format_number(sample.position.x()) << ','
        << format_number(sample.position.y()) << '\n';
  }
}

std::vector<TimedPosition> read_truth_csv(const std::filesystem::path& path) {
  std::vector<TimedPosition> truth;
  for_each_row(path, "t,x,y", 3, [&](int line_number, const auto& fields) {
    truth.push_back({parse_double(fields[0], path, line_number),
                     {parse_double(fields[1], path, line_number),
                      parse_double(fields[2], path, line_number)}});
  });
  return truth;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<TrajectoryRecord>& records) {
  std::ofstream out = open_output(path);
  out << "t,x,y,cell_index,level\n";
  for (const TrajectoryRecord& r : records) {
    out << format_number(r.time) << ',' << format_number(r.position.x()) << ','
        << format_number(r.position.y()) << ',' << r.cell_index << ','
        << r.level << '\n';
  }
}

std::vector<TrajectoryRecord> read_trajectory_csv(
    const std::filesystem::path& path) {
  std::vector<TrajectoryRecord> records;
  for_each_row(path, "t,x,y,cell_index,level", 5,
               [&](int line_number, const auto& fields) {
                 TrajectoryRecord r;
                 r.time = parse_double(fields[0], path, line_number);
                 r.position = {parse_double(fields[1], path, line_number),
                               parse_double(fields[2], path, line_number)};
                 r.cell_index = parse_int(fields[3], path, line_number);
                 r.level = parse_int(fields[4], path, line_number);
                 records.push_back(r);
               });
  return records;
}

void write_json(const std::filesystem::path& path,
                const nlohmann::json& value) {
  std::ofstream out = open_output(path);
  out << value.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void RunConfig::validate() const {
  if (width <= 0.0) throw ValidationError("workspace.extent[0] must be > 0");
  if (height <= 0.0) throw ValidationError("workspace.extent[1] must be > 0");
  if (finest_resolution <= 0.0)
    throw ValidationError("grid.finest_resolution must be > 0");
  if (levels < 1) throw ValidationError("grid.levels must be >= 1");
  if (params.sigma_x <= 0.0) throw ValidationError("params.sigma_x must be > 0");
  if (params.sigma_o <= 0.0) throw ValidationError("params.sigma_o must be > 0");
  if (params.sample_interval <= 0.0)
    throw ValidationError("params.sample_interval must be > 0");
  if (params.speed < 0.0) throw ValidationError("params.speed must be >= 0");
  if (preprocess.outlier_threshold <= 0.0)
    throw ValidationError("preprocess.outlier_threshold must be > 0");
  if (preprocess.smoothing_window < 1)
    throw ValidationError("preprocess.smoothing_window must be >= 1");
  if (particle_count < 0)
    throw ValidationError("particle_count must be >= 0");
  static const std::vector<std::string> known_estimators{
      "viterbi", "adaptive", "trilateration", "ekf", "erts", "pf"};
  if (std::find(known_estimators.begin(), known_estimators.end(), estimator) ==
      known_estimators.end()) {
    throw ValidationError("estimator: unknown value '" + estimator + "'");
  }
  for (const EventWindow& e : events) {
    if (e.t_start >= e.t_end)
      throw ValidationError("events[].t_start must be < t_end");
  }
}

namespace {

Vec2 parse_vec2(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(field + " must be a [x, y] array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config root must be a JSON object");
  static const std::vector<std::string> known_keys{
      "workspace",      "grid",   "params",    "estimator",
      "preprocess",     "seed",   "events",    "anchors",
      "waypoints",      "bench",  "particle_count",
      "ekf_init_bias_fraction"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known_keys.begin(), known_keys.end(), key) ==
        known_keys.end()) {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
  RunConfig config;
  try {
    if (j.contains("workspace")) {
      const auto& w = j.at("workspace");
      if (w.contains("origin"))
        config.origin = parse_vec2(w.at("origin"), "workspace.origin");
      if (w.contains("extent")) {
        const Vec2 extent = parse_vec2(w.at("extent"), "workspace.extent");
        config.width = extent.x();
        config.height = extent.y();
      }
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      config.finest_resolution =
          g.value("finest_resolution", config.finest_resolution);
      config.levels = g.value("levels", config.levels);
    }
    if (j.contains("params")) {
      const auto& p = j.at("params");
      config.params.sigma_x = p.value("sigma_x", config.params.sigma_x);
      config.params.sigma_o = p.value("sigma_o", config.params.sigma_o);
      config.params.sample_interval =
          p.value("sample_interval", config.params.sample_interval);
      config.params.speed = p.value("speed", config.params.speed);
    }
    config.estimator = j.value("estimator", config.estimator);
    if (j.contains("preprocess")) {
      const auto& p = j.at("preprocess");
      config.preprocess_enabled = p.value("enabled", true);
      config.preprocess.outlier_threshold =
          p.value("outlier_threshold", config.preprocess.outlier_threshold);
      config.preprocess.smoothing_window =
          p.value("smoothing_window", config.preprocess.smoothing_window);
    }
    config.seed = j.value("seed", config.seed);
    config.ekf_init_bias_fraction =
        j.value("ekf_init_bias_fraction", config.ekf_init_bias_fraction);
    config.particle_count = j.value("particle_count", config.particle_count);
    if (j.contains("events")) {
      for (const auto& e : j.at("events")) {
        EventWindow window;
        window.anchor_id = e.at("anchor_id").get<int>();
        window.t_start = e.at("t_start").get<double>();
        window.t_end = e.at("t_end").get<double>();
        const std::string kind = e.value("kind", "dropout");
        if (kind == "dropout") {
          window.kind = EventWindow::Kind::Dropout;
        } else if (kind == "bias") {
          window.kind = EventWindow::Kind::Bias;
          window.bias = e.value("bias", 1.0);
        } else {
          throw ValidationError("events[].kind must be 'dropout' or 'bias'");
        }
        config.events.push_back(window);
      }
    }
    if (j.contains("anchors")) {
      for (const auto& a : j.at("anchors")) {
        Anchor anchor;
        anchor.id = a.at("id").get<int>();
        anchor.position = parse_vec2(a.at("position"), "anchors[].position");
        config.anchors.push_back(anchor);
      }
    }
    if (j.contains("waypoints")) {
      for (const auto& w : j.at("waypoints")) {
        config.waypoints.push_back(parse_vec2(w, "waypoints[]"));
      }
    }
    if (j.contains("bench")) {
      const auto& b = j.at("bench");
      config.bench.repetitions = b.value("repetitions", 1);
      if (b.contains("estimators")) {
        config.bench.estimators =
            b.at("estimators").get<std::vector<std::string>>();
      }
      config.bench.cases.clear();
      for (const auto& c : b.value("cases", nlohmann::json::array())) {
        BenchCase bench_case;
        bench_case.width = c.value("width", bench_case.width);
        bench_case.height = c.value("height", bench_case.height);
        bench_case.finest_resolution =
            c.value("finest_resolution", bench_case.finest_resolution);
        bench_case.levels = c.value("levels", bench_case.levels);
        bench_case.horizon = c.value("horizon", bench_case.horizon);
        config.bench.cases.push_back(bench_case);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["workspace"] = {{"origin", {config.origin.x(), config.origin.y()}},
                    {"extent", {config.width, config.height}}};
  j["grid"] = {{"finest_resolution", config.finest_resolution},
               {"levels", config.levels}};
  j["params"] = {{"sigma_x", config.params.sigma_x},
                 {"sigma_o", config.params.sigma_o},
                 {"sample_interval", config.params.sample_interval},
                 {"speed", config.params.speed}};
  j["estimator"] = config.estimator;
  j["preprocess"] = {
      {"enabled", config.preprocess_enabled},
      {"outlier_threshold", config.preprocess.outlier_threshold},
      {"smoothing_window", config.preprocess.smoothing_window}};
  j["seed"] = config.seed;
  j["ekf_init_bias_fraction"] = config.ekf_init_bias_fraction;
  j["particle_count"] = config.particle_count;
  j["events"] = nlohmann::json::array();
  for (const EventWindow& e : config.events) {
    nlohmann::json window = {{"anchor_id", e.anchor_id},
                             {"t_start", e.t_start},
                             {"t_end", e.t_end}};
    window["kind"] =
        e.kind == EventWindow::Kind::Dropout ? "dropout" : "bias";
    if (e.kind == EventWindow::Kind::Bias) window["bias"] = e.bias;
    j["events"].push_back(window);
  }
  j["anchors"] = nlohmann::json::array();
  for (const Anchor& a : config.anchors) {
    j["anchors"].push_back(
        {{"id", a.id}, {"position", {a.position.x(), a.position.y()}}});
  }
  j["waypoints"] = nlohmann::json::array();
  for (const Vec2& w : config.waypoints) {
    j["waypoints"].push_back({w.x(), w.y()});
  }
  return j;
}

}  // namespace gridloc
