#ifndef GQD_SWEEP_HPP
#define GQD_SWEEP_HPP

// Parameter-grid evaluation of G over the model families, and its CSV form.
//
// Sweep spec files are flat `key = value` text. The leading section holds
// `model`, `method`, `jobs`, `path` (file model only) and held parameters;
// each `[axis]` section declares one grid axis with either
// `start`/`stop`/`steps` (inclusive, uniform) or an explicit `values` list.
// `#` starts a comment.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gqd/errors.hpp"
#include "gqd/geodiscord.hpp"
#include "gqd/models.hpp"
#include "gqd/qst.hpp"
#include "gqd/states.hpp"

namespace gqd {

enum class ModelKind { Nanopore, XxzDm, File };

inline const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Nanopore: return "nanopore";
    case ModelKind::XxzDm: return "xxz-dm";
    case ModelKind::File: return "file";
  }
  return "?";
}

struct SweepAxis {
  std::string name;
  std::vector<double> values;

  /// steps >= 2 points from start to stop inclusive; start must differ from stop.
  static SweepAxis uniform(std::string name, double start, double stop, int steps) {
    if (steps < 2) throw SpecError("axis '" + name + "': steps must be at least 2");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw SpecError("axis '" + name + "': non-finite bounds");
    if (start == stop) throw SpecError("axis '" + name + "': start equals stop");
    SweepAxis a{std::move(name), {}};
    a.values.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
      a.values.push_back(i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1));
    }
    return a;
  }

  static SweepAxis explicit_values(std::string name, std::vector<double> values) {
    if (values.empty()) throw SpecError("axis '" + name + "': empty value list");
    for (double v : values)
      if (!std::isfinite(v)) throw SpecError("axis '" + name + "': non-finite value");
    return {std::move(name), std::move(values)};
  }
};

struct SweepSpec {
  ModelKind model = ModelKind::Nanopore;
  std::map<std::string, double> fixed;
  std::vector<SweepAxis> axes;
  Method method = Method::Alternating;
  int jobs = 1;
  std::optional<ParsedState> base_state;  // file model
};

namespace detail {

/// Canonical parameter name for a model, or empty when unknown.
inline std::string canonical_param(ModelKind model, const std::string& name) {
  static const std::map<std::string, std::string> kNanopore = {
      {"beta", "beta"}, {"N", "n_spins"}, {"n", "n_spins"}, {"n_spins", "n_spins"},
      {"D", "coupling"}, {"coupling", "coupling"}, {"t", "time"}, {"time", "time"}};
  static const std::map<std::string, std::string> kXxz = {
      {"J", "j"}, {"j", "j"}, {"Jz", "jz"}, {"jz", "jz"}, {"Dx", "dx"}, {"dx", "dx"},
      {"T", "temperature"}, {"temp", "temperature"}, {"temperature", "temperature"}};
  static const std::map<std::string, std::string> kFile = {{"mix", "mix"}};
  const auto& table = model == ModelKind::Nanopore ? kNanopore : model == ModelKind::XxzDm ? kXxz : kFile;
  const auto it = table.find(name);
  return it == table.end() ? std::string() : it->second;
}

inline std::vector<std::string> required_params(ModelKind model) {
  switch (model) {
    case ModelKind::Nanopore: return {"beta", "n_spins", "coupling", "time"};
    case ModelKind::XxzDm: return {"j", "jz", "dx", "temperature"};
    case ModelKind::File: return {"mix"};
  }
  return {};
}

}  // namespace detail

/// Throws SpecError unless every model parameter is given exactly once
/// across held values and axes, with 1 or 2 axes.
inline void validate_spec(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw SpecError("a sweep needs 1 or 2 axes");
  if (spec.jobs < 1) throw SpecError("jobs must be at least 1");
  std::map<std::string, int> seen;
  auto note = [&](const std::string& name) {
    const std::string c = detail::canonical_param(spec.model, name);
    if (c.empty()) throw SpecError(std::string("unknown parameter '") + name + "' for model " + to_string(spec.model));
    if (++seen[c] > 1) throw SpecError("parameter '" + name + "' given more than once");
  };
  for (const auto& [name, value] : spec.fixed) note(name);
  for (const auto& axis : spec.axes) {
    note(axis.name);
    if (axis.values.empty()) throw SpecError("axis '" + axis.name + "' has no points");
  }
  for (const auto& r : detail::required_params(spec.model))
    if (!seen.count(r)) throw SpecError(std::string("missing parameter '") + r + "' for model " + to_string(spec.model));
  if (spec.model == ModelKind::File && !spec.base_state) throw SpecError("file model needs a state (path)");
}

/// Canonical parameter values at one grid point.
inline std::map<std::string, double> point_parameters(const SweepSpec& spec, const std::vector<double>& axis_values) {
  std::map<std::string, double> params;
  for (const auto& [name, value] : spec.fixed) params[detail::canonical_param(spec.model, name)] = value;
  for (std::size_t i = 0; i < spec.axes.size(); ++i)
    params[detail::canonical_param(spec.model, spec.axes[i].name)] = axis_values.at(i);
  return params;
}

inline NanoporeParams nanopore_params_from(const std::map<std::string, double>& p) {
  const double n = p.at("n_spins");
  if (n != std::floor(n)) throw DomainError("nanopore: N must be an integer");
  return {p.at("beta"), static_cast<int>(n), p.at("coupling"), p.at("time")};
}

inline XxzDmParams xxz_params_from(const std::map<std::string, double>& p) {
  return {p.at("j"), p.at("jz"), p.at("dx"), p.at("temperature")};
}

/// The model state at one grid point. Throws InvalidState or DomainError.
inline DensityMatrix evaluate_point(const SweepSpec& spec, const std::vector<double>& axis_values) {
  const auto p = point_parameters(spec, axis_values);
  switch (spec.model) {
    case ModelKind::Nanopore: return nanopore_state(nanopore_params_from(p));
    case ModelKind::XxzDm: return xxz_dm_thermal_oracle(xxz_params_from(p));
    case ModelKind::File: {
      // (1 - mix) rho + mix I/4
      const double w = p.at("mix");
      if (w < 0.0 || w > 1.0) throw DomainError("mix must lie in [0, 1]");
      return DensityMatrix(spec.base_state->rho.matrix() * cplx(1.0 - w) + CMat4::identity() * cplx(0.25 * w));
    }
  }
  throw std::logic_error("unreachable");
}

struct SweepRow {
  std::vector<double> axis_values;
  std::optional<double> at;  // nanopore only: a * t
  bool valid = false;
  std::string invalid_reason;
  GResult result;
};

struct SweepTable {
  std::vector<std::string> header;
  std::vector<SweepRow> rows;
};

inline std::vector<std::string> sweep_header(const SweepSpec& spec) {
  std::vector<std::string> h;
  for (const auto& a : spec.axes) h.push_back(a.name);
  if (spec.model == ModelKind::Nanopore) h.emplace_back("at");
  for (const char* c : {"valid", "G", "lambda_max", "k1", "k2", "k3", "l1", "l2", "l3", "iterations", "converged"})
    h.emplace_back(c);
  return h;
}

/// Grid points in index order, first axis outermost.
inline std::vector<std::vector<double>> grid_points(const SweepSpec& spec) {
  std::vector<std::vector<double>> points{{}};
  for (const auto& axis : spec.axes) {
    std::vector<std::vector<double>> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& prefix : points)
      for (double v : axis.values) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    points = std::move(next);
  }
  return points;
}

inline SweepRow evaluate_row(const SweepSpec& spec, const std::vector<double>& values) {
  SweepRow row;
  row.axis_values = values;
  if (spec.model == ModelKind::Nanopore) {
    const auto p = point_parameters(spec, values);
    row.at = 1.5 * p.at("coupling") * p.at("time");
  }
  try {
    const DensityMatrix rho = evaluate_point(spec, values);
    row.result = geometric_measure(rho, spec.method);
    row.valid = true;
  } catch (const InvalidState& e) {
    row.invalid_reason = e.what();
  } catch (const DomainError& e) {
    row.invalid_reason = e.what();
  }
  return row;
}

/// Evaluates every grid point with up to spec.jobs threads. Rows come back in
/// grid-index order whatever the scheduling.
inline SweepTable run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  const auto points = grid_points(spec);

  SweepTable table;
  table.header = sweep_header(spec);
  table.rows.resize(points.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        table.rows[i] = evaluate_row(spec, points[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(points.size());
        return;
      }
    }
  };

  const auto n_threads = static_cast<std::size_t>(std::max(1, spec.jobs));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

/// RFC 4180 style; 17 significant digits, NA for invalid points, '\n' endings.
inline void emit_csv(const SweepTable& table, std::ostream& out) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  auto num = [](double v) { return detail::format_real(v); };

  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << field(table.header[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    std::string line;
    for (double v : row.axis_values) line += num(v) + ",";
    if (row.at) line += num(*row.at) + ",";
    if (row.valid) {
      const auto& r = row.result;
      line += "1," + num(r.g) + "," + num(r.opt.lambda_max);
      for (double c : r.opt.axes.k()) line += "," + num(c);
      for (double c : r.opt.axes.l()) line += "," + num(c);
      line += "," + std::to_string(r.opt.iterations) + "," + (r.opt.converged ? "1" : "0");
    } else {
      line += "0";
      for (int i = 0; i < 10; ++i) line += ",NA";
    }
    out << line << '\n';
  }
  out.flush();
  if (!out) throw Error("emit_csv: write to sink failed");
}

inline std::string csv_string(const SweepTable& table) {
  std::ostringstream os;
  emit_csv(table, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Spec files

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double spec_real(const std::string& text, int line) {
  double v = 0.0;
  const std::string t = trim(text);
  std::string_view s = t;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw SpecError("line " + std::to_string(line) + ": expected a number, got '" + t + "'");
  return v;
}

}  // namespace detail

/// Parses a sweep spec. Relative `path` entries resolve against base_dir.
inline SweepSpec parse_sweep_spec(const std::string& text, const std::filesystem::path& base_dir = {}) {
  SweepSpec spec;
  bool have_model = false;
  std::optional<std::string> state_path;

  struct PendingAxis {
    int line = 0;
    std::map<std::string, std::string> keys;
  };
  std::vector<PendingAxis> axes;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> held;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[axis]") throw SpecError("line " + std::to_string(line_no) + ": unknown section " + line);
      axes.push_back({line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw SpecError("line " + std::to_string(line_no) + ": empty key");

    if (!axes.empty()) {
      if (!axes.back().keys.emplace(key, value).second)
        throw SpecError("line " + std::to_string(line_no) + ": duplicate axis key '" + key + "'");
    } else if (key == "model") {
      if (value == "nanopore") spec.model = ModelKind::Nanopore;
      else if (value == "xxz-dm") spec.model = ModelKind::XxzDm;
      else if (value == "file") spec.model = ModelKind::File;
      else throw SpecError("line " + std::to_string(line_no) + ": unknown model '" + value + "'");
      have_model = true;
    } else if (key == "method") {
      if (value == "alternating") spec.method = Method::Alternating;
      else if (value == "grid") spec.method = Method::Grid;
      else throw SpecError("line " + std::to_string(line_no) + ": unknown method '" + value + "'");
    } else if (key == "jobs") {
      const double j = detail::spec_real(value, line_no);
      if (j < 1 || j != std::floor(j)) throw SpecError("line " + std::to_string(line_no) + ": jobs must be a positive integer");
      spec.jobs = static_cast<int>(j);
    } else if (key == "path") {
      state_path = value;
    } else {
      held.push_back({key, {value, line_no}});
    }
  }
  if (!have_model) throw SpecError("spec has no model");

  for (const auto& [key, v] : held) {
    if (spec.fixed.count(key)) throw SpecError("line " + std::to_string(v.second) + ": duplicate parameter '" + key + "'");
    spec.fixed[key] = detail::spec_real(v.first, v.second);
  }

  for (const auto& a : axes) {
    const auto at = [&](const char* k) -> const std::string& {
      const auto it = a.keys.find(k);
      if (it == a.keys.end())
        throw SpecError("axis at line " + std::to_string(a.line) + ": missing '" + k + "'");
      return it->second;
    };
    const std::string& name = at("name");
    for (const auto& [k, v] : a.keys)
      if (k != "name" && k != "start" && k != "stop" && k != "steps" && k != "values")
        throw SpecError("axis at line " + std::to_string(a.line) + ": unknown key '" + k + "'");
    if (a.keys.count("values")) {
      if (a.keys.count("start") || a.keys.count("stop") || a.keys.count("steps"))
        throw SpecError("axis at line " + std::to_string(a.line) + ": use either values or start/stop/steps");
      std::vector<double> values;
      std::stringstream ss(at("values"));
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(detail::spec_real(item, a.line));
      spec.axes.push_back(SweepAxis::explicit_values(name, std::move(values)));
    } else {
      const double steps = detail::spec_real(at("steps"), a.line);
      if (steps != std::floor(steps)) throw SpecError("axis '" + name + "': steps must be an integer");
      spec.axes.push_back(SweepAxis::uniform(name, detail::spec_real(at("start"), a.line),
                                             detail::spec_real(at("stop"), a.line), static_cast<int>(steps)));
    }
  }

  if (spec.model == ModelKind::File) {
    if (!state_path) throw SpecError("file model needs 'path'");
    std::filesystem::path p(*state_path);
    if (p.is_relative()) p = base_dir / p;
    std::ifstream f(p);
    if (!f) throw SpecError("cannot read state file " + p.string());
    std::stringstream buf;
    buf << f.rdbuf();
    spec.base_state = parse_state(buf.str());
  } else if (state_path) {
    throw SpecError("'path' only applies to the file model");
  }

  validate_spec(spec);
  return spec;
}

inline SweepSpec load_sweep_spec(const std::filesystem::path& file) {
  std::ifstream f(file);
  if (!f) throw SpecError("cannot read spec file " + file.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_sweep_spec(buf.str(), file.parent_path());
}

}  // namespace gqd

#endif  // GQD_SWEEP_HPP
