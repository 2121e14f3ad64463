#include "lrlab/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include <json.hpp>

#include "lrlab/analysis.hpp"
#include "lrlab/chsck.hpp"
#include "lrlab/landscape.hpp"
#include "lrlab/langevin.hpp"
#include "lrlab/statics.hpp"
#include "lrlab/teacher_student.hpp"
#include "lrlab/version.hpp"

namespace lrlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  return j;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

const json& need(const json& obj, const std::string& key,
                 const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

double need_num(const json& obj, const std::string& key,
                const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_number())
    throw ConfigError("key '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

long need_int(const json& obj, const std::string& key,
              const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_number_integer())
    throw ConfigError("key '" + key + "' in " + where + " must be an integer");
  return v.get<long>();
}

double opt_num(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

long opt_int(const json& obj, const std::string& key, long fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer())
    throw ConfigError("key '" + key + "' must be an integer");
  return obj.at(key).get<long>();
}

Schedule parse_schedule(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ".schedule must be an object");
  check_keys(j, {"kind", "eta0", "beta", "t_switch", "t_start"},
             where + ".schedule");
  const json& kind = need(j, "kind", where + ".schedule");
  const double eta0 = need_num(j, "eta0", where + ".schedule");
  const double t_start = opt_num(j, "t_start", 1.0);
  try {
    if (kind == "constant") return Schedule::constant(eta0);
    if (kind == "power")
      return Schedule::power_law(eta0, need_num(j, "beta", where + ".schedule"),
                                 t_start);
    if (kind == "switch")
      return Schedule::constant_then_decay(
          eta0, need_num(j, "beta", where + ".schedule"),
          need_num(j, "t_switch", where + ".schedule"), t_start);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ".schedule: " + e.what());
  }
  throw ConfigError(where +
                    ".schedule.kind must be 'constant', 'power' or 'switch'");
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["eta0"] = s.eta0();
  switch (s.kind()) {
    case ScheduleKind::Constant:
      j["kind"] = "constant";
      break;
    case ScheduleKind::PowerLaw:
      j["kind"] = "power";
      j["beta"] = s.beta();
      j["t_start"] = s.t_start();
      break;
    case ScheduleKind::ConstantThenDecay:
      j["kind"] = "switch";
      j["beta"] = s.beta();
      j["t_switch"] = s.t_switch();
      j["t_start"] = s.t_start();
      break;
  }
  return j;
}

std::vector<std::uint64_t> parse_seeds(const json& cfg,
                                       const std::string& where) {
  const json& v = need(cfg, "seeds", where);
  if (!v.is_array() || v.empty())
    throw ConfigError("'seeds' in " + where + " must be a non-empty array");
  std::vector<std::uint64_t> seeds;
  for (const auto& s : v) {
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ConfigError("'seeds' entries must be non-negative integers");
    seeds.push_back(s.get<std::uint64_t>());
  }
  return seeds;
}

struct FitSpec {
  bool enabled = false;
  enum class Offset { Value, InstanceGroundState, Threshold } mode =
      Offset::Value;
  double value = 0.0;
  bool last_decade = true;
  double lo = 0.0, hi = 0.0;
};

FitSpec parse_fit(const json& cfg, const std::string& where) {
  FitSpec spec;
  if (!cfg.contains("fit")) return spec;
  const json& j = cfg.at("fit");
  check_keys(j, {"offset", "window"}, where + ".fit");
  spec.enabled = true;
  const json& off = need(j, "offset", where + ".fit");
  if (off.is_number()) {
    spec.mode = FitSpec::Offset::Value;
    spec.value = off.get<double>();
  } else if (off == "instance_ground_state") {
    spec.mode = FitSpec::Offset::InstanceGroundState;
  } else if (off == "threshold") {
    spec.mode = FitSpec::Offset::Threshold;
  } else {
    throw ConfigError(where +
                      ".fit.offset must be a number, 'instance_ground_state' "
                      "or 'threshold'");
  }
  if (j.contains("window") && j.at("window") != "last_decade") {
    const json& w = j.at("window");
    if (!w.is_array() || w.size() != 2)
      throw ConfigError(where + ".fit.window must be [t_lo, t_hi]");
    spec.last_decade = false;
    spec.lo = w.at(0).get<double>();
    spec.hi = w.at(1).get<double>();
  }
  return spec;
}

struct PlateauSpec {
  bool enabled = false;
  double rel_tol = 0.01;
  int window_len = 40;
};

PlateauSpec parse_plateau(const json& cfg, const std::string& where) {
  PlateauSpec spec;
  if (!cfg.contains("plateau")) return spec;
  const json& j = cfg.at("plateau");
  check_keys(j, {"rel_tol", "window_len"}, where + ".plateau");
  spec.enabled = true;
  spec.rel_tol = opt_num(j, "rel_tol", spec.rel_tol);
  spec.window_len = static_cast<int>(opt_int(j, "window_len", spec.window_len));
  return spec;
}

json fit_to_json(const ExponentFit& fit, double offset_used) {
  return json{{"exponent", fit.exponent},
              {"stderr", fit.stderr_exponent},
              {"intercept", fit.intercept},
              {"window", {fit.t_lo, fit.t_hi}},
              {"n_points", fit.n_points},
              {"offset_used", offset_used}};
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

struct ArtifactWriter {
  fs::path dir;
  std::vector<std::string> files;
  std::mutex mutex;

  explicit ArtifactWriter(const std::string& output_dir) : dir(output_dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir))
      throw ConfigError("cannot create output directory " + dir.string());
  }

  void add(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex);
    files.push_back(name);
  }

  void write_trajectory(const std::string& name, const Trajectory& traj) {
    traj.write_csv_file((dir / name).string());
    add(name);
  }

  void finalize(const json& resolved_config, json summary) {
    std::sort(files.begin(), files.end());
    summary["files"] = files;
    write_json_file(dir / "summary.json", summary);
    files.push_back("summary.json");
    std::sort(files.begin(), files.end());
    json manifest{{"version", kVersion},
                  {"config", resolved_config},
                  {"files", files}};
    write_json_file(dir / "manifest.json", manifest);
  }
};

void run_pool(std::vector<std::function<void()>>& tasks) {
  const int workers =
      std::max(1, std::min<int>(worker_count(), static_cast<int>(tasks.size())));
  if (workers == 1) {
    for (auto& task : tasks) task();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        tasks[i]();
      }
    });
  for (auto& t : pool) t.join();
}

std::optional<json> maybe_fit(const FitSpec& spec, const Trajectory& traj,
                              const std::string& value_column, double t_max,
                              double instance_offset, double threshold_offset,
                              std::string* error) {
  if (!spec.enabled) return std::nullopt;
  double offset = spec.value;
  if (spec.mode == FitSpec::Offset::InstanceGroundState)
    offset = instance_offset;
  else if (spec.mode == FitSpec::Offset::Threshold)
    offset = threshold_offset;
  const double lo = spec.last_decade ? t_max / 10.0 : spec.lo;
  const double hi = spec.last_decade ? t_max : spec.hi;
  try {
    const auto times = traj.column(traj.column_index("t") >= 0 ? "t" : "step");
    const auto values = traj.column(value_column);
    return fit_to_json(fit_power_law(times, values, offset, lo, hi), offset);
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- convex

json run_convex(const json& cfg, ArtifactWriter& out) {
  check_keys(cfg,
             {"experiment", "output_dir", "seeds", "kappa", "temperature",
              "schedule", "dt", "t_max", "record_stride", "replicas", "fit"},
             "convex config");
  const double kappa = need_num(cfg, "kappa", "convex config");
  const double temperature = need_num(cfg, "temperature", "convex config");
  const Schedule schedule = parse_schedule(need(cfg, "schedule", "convex"),
                                           "convex config");
  const double dt = need_num(cfg, "dt", "convex config");
  const double t_max = need_num(cfg, "t_max", "convex config");
  const int stride = static_cast<int>(opt_int(cfg, "record_stride", 1));
  const int replicas = static_cast<int>(opt_int(cfg, "replicas", 1));
  const auto seeds = parse_seeds(cfg, "convex config");
  const FitSpec fit = parse_fit(cfg, "convex config");

  json runs = json::array();
  for (const auto seed : seeds) {
    Trajectory traj =
        replicas > 1
            ? convex_mean_loss(kappa, temperature, schedule, dt, t_max, seed,
                               replicas, stride)
            : convex_reference_run(kappa, temperature, schedule, dt, t_max,
                                   seed, 1.0, stride);
    const std::string name = "traj_beta" + format_param(schedule.beta()) +
                             "_seed" + std::to_string(seed) + ".csv";
    out.write_trajectory(name, traj);
    json row{{"seed", seed}, {"file", name}};
    std::string fit_error;
    if (auto f = maybe_fit(fit, traj, "loss", t_max, 0.0, 0.0, &fit_error))
      row["fit"] = *f;
    else if (!fit_error.empty())
      row["fit_error"] = fit_error;
    runs.push_back(std::move(row));
  }
  return json{{"kind", "convex"}, {"runs", runs}};
}

// ------------------------------------------------------------- sk family

json run_sk_family(const json& cfg, ArtifactWriter& out, bool planted) {
  const std::string where = planted ? "sk-planted config" : "sk config";
  std::set<std::string> keys{"experiment", "output_dir", "seeds",   "n",
                             "temperature", "schedule",  "dt",      "t_max",
                             "record_stride", "fit",     "plateau"};
  if (planted) keys.insert("delta");
  check_keys(cfg, keys, where);

  const int n = static_cast<int>(need_int(cfg, "n", where));
  const double temperature = need_num(cfg, "temperature", where);
  const Schedule schedule =
      parse_schedule(need(cfg, "schedule", where), where);
  const double dt = need_num(cfg, "dt", where);
  const double t_max = need_num(cfg, "t_max", where);
  const int stride = static_cast<int>(opt_int(cfg, "record_stride", 1));
  const double delta = planted ? need_num(cfg, "delta", where) : 0.0;
  const auto seeds = parse_seeds(cfg, where);
  const FitSpec fit = parse_fit(cfg, where);
  const PlateauSpec plateau = parse_plateau(cfg, where);

  json runs = json::array();
  std::vector<json> rows(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    tasks.push_back([&, i] {
      const std::uint64_t seed = seeds[i];
      try {
        LangevinModel model;
        if (planted) {
          model = eigenbasis_model(sample_spiked(n, delta, seed));
        } else {
          model = eigenbasis_model_values_only(sample_sk(n, seed));
        }
        SKRunConfig run_cfg;
        run_cfg.temperature = temperature;
        run_cfg.schedule = schedule;
        run_cfg.dt = dt;
        run_cfg.t_max = t_max;
        run_cfg.record_stride = stride;
        run_cfg.seed = seed;
        Trajectory traj = run(model, run_cfg);

        const std::string name = "traj_beta" + format_param(schedule.beta()) +
                                 "_seed" + std::to_string(seed) + ".csv";
        out.write_trajectory(name, traj);
        json row{{"seed", seed},
                 {"file", name},
                 {"mu_max", model.mu_max()},
                 {"ground_state_loss", model.ground_state_loss()}};
        std::string fit_error;
        if (auto f = maybe_fit(fit, traj, "loss", t_max,
                               model.ground_state_loss(), 0.0, &fit_error))
          row["fit"] = *f;
        else if (!fit_error.empty())
          row["fit_error"] = fit_error;
        if (plateau.enabled) {
          const auto t = detect_plateau(traj.column("t"), traj.column("loss"),
                                        plateau.rel_tol, plateau.window_len);
          row["plateau_t"] = t ? json(*t) : json();
        }
        const auto losses = traj.column("loss");
        const auto overlaps = traj.column("m_signal");
        row["final_loss"] = losses.back();
        row["final_m_top"] = traj.column("m_top").back();
        row["final_m_signal"] = overlaps.back();
        rows[i] = std::move(row);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
  }
  run_pool(tasks);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!errors[i].empty())
      throw NumericalError("seed " + std::to_string(seeds[i]) + ": " +
                           errors[i]);
    runs.push_back(std::move(rows[i]));
  }

  json theory;
  const double beta_search =
      schedule.kind() == ScheduleKind::PowerLaw ? schedule.beta() : 0.0;
  if (planted && delta < 0.5) {
    theory["kappa"] = 1.0 - 2.0 * delta;
    theory["t_cross"] = crossover_time(static_cast<double>(n),
                                       schedule.eta0(), 1.0 - 2.0 * delta,
                                       beta_search);
  }
  if (!planted && schedule.kind() == ScheduleKind::PowerLaw) {
    json overlay_t = json::array(), overlay_v = json::array();
    for (double t = 10.0; t <= t_max * (1.0 + 1e-12); t *= 10.0) {
      overlay_t.push_back(t);
      overlay_v.push_back(theoretical_sk_decay(t, schedule.beta(),
                                               schedule.eta0(), temperature));
    }
    theory["decay_overlay"] = json{{"t", overlay_t}, {"loss_offset", overlay_v}};
  }

  json summary{{"kind", planted ? "sk-planted" : "sk"}, {"runs", runs}};
  if (!theory.is_null()) summary["theory"] = theory;
  return summary;
}

// ----------------------------------------------------------------- chsck

json run_chsck(const json& cfg, ArtifactWriter& out, bool smt) {
  const std::string where = smt ? "chsck-smt config" : "chsck-pspin config";
  std::set<std::string> keys{"experiment", "output_dir",   "p",
                             "temperature", "schedule",    "dt",
                             "n_steps",     "record_stride", "fit",
                             "dump_grid"};
  if (smt) {
    keys.insert("delta2");
    keys.insert("deltap");
    keys.insert("m0");
  }
  check_keys(cfg, keys, where);

  const int p = static_cast<int>(need_int(cfg, "p", where));
  ChsckConfig run_cfg;
  try {
    run_cfg.potential =
        smt ? Potential::spiked(p, need_num(cfg, "delta2", where),
                                need_num(cfg, "deltap", where))
            : Potential::pure(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  run_cfg.temperature = need_num(cfg, "temperature", where);
  run_cfg.schedule = parse_schedule(need(cfg, "schedule", where), where);
  run_cfg.dt = need_num(cfg, "dt", where);
  run_cfg.n_steps = static_cast<int>(need_int(cfg, "n_steps", where));
  run_cfg.record_stride = static_cast<int>(opt_int(cfg, "record_stride", 10));
  run_cfg.m0 = smt ? opt_num(cfg, "m0", 1e-10) : 0.0;
  try {
    validate(run_cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }

  ChsckResult result = integrate(run_cfg);
  const std::string name =
      "traj_beta" + format_param(run_cfg.schedule.beta()) + ".csv";
  out.write_trajectory(name, result.trajectory);

  const double t_max = run_cfg.dt * run_cfg.n_steps;
  json summary{{"kind", smt ? "chsck-smt" : "chsck-pspin"},
               {"file", name},
               {"final_loss", result.trajectory.column("loss").back()},
               {"final_m", result.trajectory.column("m").back()},
               {"threshold_loss", threshold_loss(p)},
               {"threshold_loss_at_temperature",
                threshold_loss_at_temperature(p, run_cfg.temperature)}};
  const FitSpec fit = parse_fit(cfg, where);
  std::string fit_error;
  if (auto f = maybe_fit(fit, result.trajectory, "loss", t_max, 0.0,
                         threshold_loss(p), &fit_error))
    summary["fit"] = *f;
  else if (!fit_error.empty())
    summary["fit_error"] = fit_error;

  if (cfg.contains("dump_grid") && cfg.at("dump_grid").get<bool>()) {
    result.grid.write_binary((out.dir / "grid.bin").string());
    out.add("grid.bin");
    summary["grid_file"] = "grid.bin";
  }
  return summary;
}

// ---------------------------------------------------------------- statics

json statics_summary(int p, double delta2, double deltap) {
  const Potential pot = Potential::spiked(p, delta2, deltap);
  const RSSolution bayes = nishimori_solution(pot);
  const RSSolution zero = zero_temperature_solution(pot);
  const BoundaryResult boundary = langevin_easy_boundary(deltap, p);
  return json{
      {"kind", "statics"},
      {"p", p},
      {"delta2", delta2},
      {"deltap", deltap},
      {"nishimori",
       {{"m", bayes.m},
        {"q", bayes.q},
        {"loss_gs", bayes.loss_gs},
        {"residual", bayes.residual},
        {"iterations", bayes.iterations}}},
      {"zero_temperature",
       {{"m", zero.m},
        {"chi", zero.chi},
        {"loss_gs", zero.loss_gs},
        {"residual", zero.residual},
        {"iterations", zero.iterations}}},
      {"boundary",
       {{"delta2_star", boundary.delta2_star},
        {"inside_unit_interval", boundary.inside_unit_interval},
        {"langevin_easy", delta2 < boundary.delta2_star}}}};
}

json run_statics(const json& cfg, ArtifactWriter&) {
  check_keys(cfg, {"experiment", "output_dir", "p", "delta2", "deltap"},
             "statics config");
  return statics_summary(static_cast<int>(need_int(cfg, "p", "statics")),
                         need_num(cfg, "delta2", "statics"),
                         need_num(cfg, "deltap", "statics"));
}

// ---------------------------------------------------------- teacher-student

json run_teacher_student(const json& cfg, ArtifactWriter& out) {
  const std::string where = "teacher-student config";
  check_keys(cfg,
             {"experiment", "output_dir", "seeds", "input_dim", "dataset_size",
              "teacher_width", "student_width", "batch", "activation",
              "schedule", "steps", "eval_stride", "plateau"},
             where);
  TSConfig ts;
  ts.input_dim = static_cast<int>(need_int(cfg, "input_dim", where));
  ts.dataset_size = static_cast<int>(need_int(cfg, "dataset_size", where));
  ts.teacher_width = static_cast<int>(need_int(cfg, "teacher_width", where));
  ts.student_width = static_cast<int>(need_int(cfg, "student_width", where));
  ts.batch = static_cast<int>(opt_int(cfg, "batch", 1));
  ts.schedule = parse_schedule(need(cfg, "schedule", where), where);
  ts.steps = need_int(cfg, "steps", where);
  ts.eval_stride = static_cast<int>(opt_int(cfg, "eval_stride", 100));
  if (cfg.contains("activation")) {
    if (cfg.at("activation") == "erf")
      ts.activation = Activation::ErfScaled;
    else if (cfg.at("activation") == "relu")
      ts.activation = Activation::Relu;
    else
      throw ConfigError(where + ".activation must be 'erf' or 'relu'");
  }
  try {
    validate(ts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  const auto seeds = parse_seeds(cfg, where);
  const PlateauSpec plateau = parse_plateau(cfg, where);

  json runs = json::array();
  std::vector<json> rows(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    tasks.push_back([&, i] {
      try {
        TSConfig per_seed = ts;
        per_seed.seed = seeds[i];
        Trajectory traj = train(per_seed);
        const std::string name =
            "traj_beta" + format_param(ts.schedule.beta()) + "_seed" +
            std::to_string(seeds[i]) + ".csv";
        out.write_trajectory(name, traj);
        json row{{"seed", seeds[i]},
                 {"file", name},
                 {"final_mse", traj.column("mse_train").back()}};
        if (plateau.enabled) {
          const auto t =
              detect_plateau(traj.column("step"), traj.column("mse_train"),
                             plateau.rel_tol, plateau.window_len);
          row["plateau_step"] = t ? json(*t) : json();
        }
        rows[i] = std::move(row);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
  }
  run_pool(tasks);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!errors[i].empty())
      throw NumericalError("seed " + std::to_string(seeds[i]) + ": " +
                           errors[i]);
    runs.push_back(std::move(rows[i]));
  }
  return json{{"kind", "teacher-student"},
              {"runs", runs},
              {"student_init", "standard normal, both layers"}};
}

json dispatch(const json& cfg, ArtifactWriter& out);

// ------------------------------------------------------------------ sweep

json run_sweep_config(const json& cfg, ArtifactWriter& out) {
  const std::string where = "sweep config";
  check_keys(cfg, {"experiment", "output_dir", "axis", "base", "theory",
                   "gamma"},
             where);
  const json& axis = need(cfg, "axis", where);
  check_keys(axis, {"parameter", "values"}, where + ".axis");
  if (need(axis, "parameter", where + ".axis") != "beta")
    throw ConfigError("sweep axis parameter must be 'beta'");
  const json& values = need(axis, "values", where + ".axis");
  if (!values.is_array() || values.empty())
    throw ConfigError("sweep axis values must be a non-empty array");

  const json& base = need(cfg, "base", where);
  if (!base.is_object() || !base.contains("experiment"))
    throw ConfigError("sweep base must be a config object with 'experiment'");
  const std::string base_kind = base.at("experiment").get<std::string>();
  if (base_kind != "sk" && base_kind != "sk-planted" &&
      base_kind != "chsck-pspin" && base_kind != "chsck-smt" &&
      base_kind != "convex")
    throw ConfigError("sweep base experiment '" + base_kind +
                      "' cannot be swept over beta");
  std::string theory = "none";
  if (cfg.contains("theory")) {
    theory = cfg.at("theory").get<std::string>();
    if (theory != "sk" && theory != "pspin" && theory != "none")
      throw ConfigError("sweep theory must be 'sk', 'pspin' or 'none'");
  }
  const double gamma = opt_num(cfg, "gamma", 2.0 / 3.0);

  struct Point {
    double beta = 0.0;
    json summary;
    std::string error;
  };
  std::vector<Point> points(values.size());

  // validate every point's config before any compute
  std::vector<json> point_cfgs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values.at(i).is_number())
      throw ConfigError("sweep axis values must be numbers");
    points[i].beta = values.at(i).get<double>();
    json pc = base;
    pc["output_dir"] = "unused";
    if (!pc.contains("schedule") || !pc.at("schedule").is_object())
      throw ConfigError("sweep base must carry a schedule object");
    pc["schedule"]["kind"] =
        points[i].beta == 0.0 ? "constant" : "power";
    if (points[i].beta != 0.0) pc["schedule"]["beta"] = points[i].beta;
    else pc["schedule"].erase("beta");
    parse_schedule(pc.at("schedule"), where + ".base");
    point_cfgs[i] = std::move(pc);
  }

  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < points.size(); ++i) {
    tasks.push_back([&, i] {
      try {
        points[i].summary = dispatch(point_cfgs[i], out);
      } catch (const std::exception& e) {
        points[i].error = e.what();
      }
    });
  }
  run_pool(tasks);

  Trajectory sweep_rows({"param", "exponent", "stderr", "theory"});
  json point_summaries = json::array();
  int failures = 0;
  for (const auto& point : points) {
    const double theory_value =
        theory == "sk"
            ? std::min(point.beta, 1.0 - point.beta)
            : (theory == "pspin"
                   ? std::min(point.beta, gamma * (1.0 - point.beta))
                   : std::nan(""));
    json entry{{"beta", point.beta}};
    if (!point.error.empty()) {
      ++failures;
      entry["error"] = point.error;
      point_summaries.push_back(entry);
      continue;
    }
    // average fitted exponents across the point's runs
    double sum = 0.0, sum2 = 0.0;
    int count = 0;
    double single_stderr = 0.0;
    const json runs = point.summary.contains("runs")
                          ? point.summary.at("runs")
                          : json::array({point.summary});
    for (const auto& run : runs) {
      if (!run.contains("fit")) continue;
      const double e = run.at("fit").at("exponent").get<double>();
      single_stderr = run.at("fit").at("stderr").get<double>();
      sum += e;
      sum2 += e * e;
      ++count;
    }
    if (count == 0) {
      ++failures;
      entry["error"] = "no successful fits at this point";
      point_summaries.push_back(entry);
      continue;
    }
    const double mean = sum / count;
    const double spread =
        count > 1 ? std::sqrt(std::max(0.0, sum2 / count - mean * mean) /
                              (count - 1))
                  : single_stderr;
    sweep_rows.add_row({point.beta, mean, spread, theory_value});
    entry["exponent"] = mean;
    entry["stderr"] = spread;
    entry["theory"] = theory_value;
    entry["detail"] = point.summary;
    point_summaries.push_back(entry);
  }
  out.write_trajectory("sweep.csv", sweep_rows);
  // partial failures are recorded per point; the caller turns a nonzero
  // failure count into a nonzero exit after the artifacts are finalized
  return json{{"kind", "sweep"},
              {"points", point_summaries},
              {"failures", failures}};
}

json dispatch(const json& cfg, ArtifactWriter& out) {
  const std::string kind =
      need(cfg, "experiment", "config").get<std::string>();
  if (kind == "convex") return run_convex(cfg, out);
  if (kind == "sk") return run_sk_family(cfg, out, false);
  if (kind == "sk-planted") return run_sk_family(cfg, out, true);
  if (kind == "chsck-pspin") return run_chsck(cfg, out, false);
  if (kind == "chsck-smt") return run_chsck(cfg, out, true);
  if (kind == "statics") return run_statics(cfg, out);
  if (kind == "teacher-student") return run_teacher_student(cfg, out);
  if (kind == "sweep") return run_sweep_config(cfg, out);
  throw ConfigError("unknown experiment kind '" + kind + "'");
}

ExperimentOutcome run_config(const std::string& config_path,
                             const char* required_kind) {
  ExperimentOutcome outcome;
  json cfg;
  std::string output_dir;
  try {
    cfg = load_json(config_path);
    const std::string kind =
        need(cfg, "experiment", "config").get<std::string>();
    if (required_kind && kind != required_kind)
      throw ConfigError("expected a config of kind '" +
                        std::string(required_kind) + "', got '" + kind + "'");
    output_dir = need(cfg, "output_dir", "config").get<std::string>();
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
    return outcome;
  } catch (const json::exception& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
    return outcome;
  }

  try {
    ArtifactWriter out(output_dir);
    json summary;
    try {
      summary = dispatch(cfg, out);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config error: ") + e.what());
    }
    out.finalize(cfg, summary);
    outcome.files = out.files;
    if (summary.contains("failures") &&
        summary.at("failures").get<int>() > 0) {
      outcome.exit_code = 3;
      outcome.message = std::to_string(summary.at("failures").get<int>()) +
                        " sweep point(s) failed; partial results written";
    }
    return outcome;
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("LRLAB_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

Schedule schedule_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("schedule is not valid JSON: " + std::string(e.what()));
  }
  return parse_schedule(j, "schedule");
}

ExperimentOutcome run_experiment(const std::string& config_path) {
  return run_config(config_path, nullptr);
}

ExperimentOutcome run_sweep(const std::string& config_path) {
  return run_config(config_path, "sweep");
}

ExperimentOutcome run_spectrum(const std::string& config_path) {
  ExperimentOutcome outcome;
  try {
    const json cfg = load_json(config_path);
    check_keys(cfg, {"experiment", "output_dir", "seeds", "n", "delta"},
               "spectrum config");
    const std::string kind =
        need(cfg, "experiment", "spectrum config").get<std::string>();
    if (kind != "sk" && kind != "sk-planted")
      throw ConfigError("spectrum config kind must be 'sk' or 'sk-planted'");
    const int n = static_cast<int>(need_int(cfg, "n", "spectrum config"));
    const auto seeds = parse_seeds(cfg, "spectrum config");
    ArtifactWriter out(
        need(cfg, "output_dir", "spectrum config").get<std::string>());

    for (const auto seed : seeds) {
      std::vector<double> eigs;
      if (kind == "sk-planted") {
        const double delta = need_num(cfg, "delta", "spectrum config");
        eigs = sym_eigenvalues(sample_spiked(n, delta, seed).m);
      } else {
        eigs = sym_eigenvalues(scaled_couplings(sample_sk(n, seed)));
      }
      Trajectory spectrum({"index", "eigenvalue"});
      for (std::size_t i = 0; i < eigs.size(); ++i)
        spectrum.add_row({static_cast<double>(i), eigs[i]});
      out.write_trajectory("spectrum_seed" + std::to_string(seed) + ".csv",
                           spectrum);
    }
    out.finalize(cfg, json{{"kind", "spectrum"}});
    outcome.files = out.files;
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace lrlab
