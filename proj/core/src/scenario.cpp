#include "noma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "noma/error.hpp"

namespace noma::harness {
namespace {

using nlohmann::json;

constexpr std::uint64_t kOutageTrials = 1'000'000;
constexpr std::uint64_t kErgodicTrials = 100'000;
constexpr std::uint64_t kMinMapTrials = 1'000;
constexpr std::uint64_t kMinLinkTrials = 10'000;

struct ExperimentInfo {
  Experiment kind;
  std::string_view name;
  std::string_view description;
};

constexpr ExperimentInfo kExperiments[] = {
    {Experiment::kFig3Scaling, "Fig3Scaling",
     "ergodic NOMA-SM vs TDMA sum rate against antenna count M"},
    {Experiment::kFig4OutageMap, "Fig4OutageMap",
     "cooperative vs non-cooperative outage over a grid of User B positions"},
    {Experiment::kFig4SnrSweep, "Fig4SnrSweep",
     "cooperative vs non-cooperative outage against transmit SNR"},
    {Experiment::kFig5FixedAlloc, "Fig5FixedAlloc",
     "ergodic NOMA vs OMA rates with a fixed power split over User B positions"},
    {Experiment::kFig5CrAlloc, "Fig5CrAlloc",
     "ergodic rates with QoS-driven (cognitive radio) power allocation over User B positions"},
    {Experiment::kMustLink, "MustLink",
     "uncoded BER/goodput of MUST Categories 1-3 against an OMA baseline"},
    {Experiment::kCustom, "Custom",
     "outage and ergodic rates for one geometry over an SNR sweep"},
};

std::string render_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

std::string join_path(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

// Wraps a JSON object and remembers which keys were read, so that leftovers
// can be reported as unknown fields.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = object_.find(std::string(key));
    return it == object_.end() ? nullptr : &*it;
  }

  bool has(std::string_view key) const { return object_.contains(std::string(key)); }

  std::string path(std::string_view key) const { return join_path(path_, key); }

  void reject_unread(std::string_view allowed_for) const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.contains(key)) {
        throw ValidationError(join_path(path_, key),
                              "field is not used by " + std::string(allowed_for));
      }
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ValidationError(path, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path, "must be finite");
  return v;
}

std::uint64_t as_count(const json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    if (value.get<std::int64_t>() < 0) throw ValidationError(path, "must be non-negative");
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  throw ValidationError(path, "expected a non-negative integer");
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ValidationError(path, "expected a string");
  return value.get<std::string>();
}

Position as_position(const json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) {
    throw ValidationError(path, "expected a position [x, y]");
  }
  return {as_number(value[0], path + "[0]"), as_number(value[1], path + "[1]")};
}

std::vector<double> as_number_list(const json& value, const std::string& path) {
  std::vector<double> out;
  if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(as_number(value[i], path + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(as_number(value, path));
  }
  if (out.empty()) throw ValidationError(path, "must not be empty");
  return out;
}

void require_increasing(const std::vector<double>& values, const std::string& path) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ValidationError(path, "sweep values must be strictly increasing");
  }
}

std::vector<double> linspace_axis(const json& value, const std::string& path) {
  ObjectReader axis(value, path);
  const json* start = axis.find("start");
  const json* stop = axis.find("stop");
  const json* count = axis.find("count");
  if (!start || !stop || !count) throw ValidationError(path, "axis needs start, stop and count");
  axis.reject_unread("a grid axis");
  const double a = as_number(*start, axis.path("start"));
  const double b = as_number(*stop, axis.path("stop"));
  const std::uint64_t n = as_count(*count, axis.path("count"));
  if (n == 0) throw ValidationError(axis.path("count"), "must be >= 1");
  if (n > 1 && !(b > a)) throw ValidationError(path, "stop must exceed start");
  std::vector<double> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

std::vector<Position> parse_grid(const json& value, const std::string& path) {
  ObjectReader grid(value, path);
  std::vector<Position> out;
  if (const json* points = grid.find("points")) {
    if (grid.has("x") || grid.has("y")) {
      throw ValidationError(path, "use either points or x/y axes, not both");
    }
    if (!points->is_array()) throw ValidationError(grid.path("points"), "expected a list");
    for (std::size_t i = 0; i < points->size(); ++i) {
      out.push_back(as_position((*points)[i], grid.path("points") + "[" + std::to_string(i) + "]"));
    }
  } else {
    const json* x = grid.find("x");
    const json* y = grid.find("y");
    if (!x || !y) throw ValidationError(path, "grid needs points or both x and y axes");
    const auto xs = linspace_axis(*x, grid.path("x"));
    const auto ys = linspace_axis(*y, grid.path("y"));
    for (double yv : ys) {
      for (double xv : xs) out.push_back({xv, yv});
    }
  }
  grid.reject_unread("a grid");
  if (out.empty()) throw ValidationError(path, "grid must contain at least one position");
  return out;
}

// Which optional sections an experiment reads, and whether they are required.
enum class Use { kNo, kOptional, kRequired };

struct Rules {
  Use geometry_strong = Use::kNo;
  bool scalar_link = false;  // geometry, pathloss, snr_db
  bool snr_sweep = false;    // snr_db may hold several values
  Use snr = Use::kNo;
  Use allocation = Use::kNo;
  bool allow_fixed = true;
  bool allow_cr = true;
  Use targets = Use::kNo;
  Use grid = Use::kNo;
  Use mimo = Use::kNo;
  Use must = Use::kNo;
};

Rules rules_for(Experiment e) {
  Rules r;
  switch (e) {
    case Experiment::kFig3Scaling:
      r.mimo = Use::kRequired;
      break;
    case Experiment::kFig4OutageMap:
      r.scalar_link = true;
      r.snr = Use::kOptional;
      r.allocation = Use::kOptional;
      r.allow_cr = false;
      r.targets = Use::kOptional;
      r.grid = Use::kRequired;
      break;
    case Experiment::kFig4SnrSweep:
      r.scalar_link = true;
      r.geometry_strong = Use::kRequired;
      r.snr_sweep = true;
      r.snr = Use::kRequired;
      r.allocation = Use::kOptional;
      r.allow_cr = false;
      r.targets = Use::kOptional;
      break;
    case Experiment::kFig5FixedAlloc:
      r.scalar_link = true;
      r.snr = Use::kOptional;
      r.allocation = Use::kOptional;
      r.allow_cr = false;
      r.grid = Use::kRequired;
      break;
    case Experiment::kFig5CrAlloc:
      r.scalar_link = true;
      r.snr = Use::kOptional;
      r.allocation = Use::kOptional;
      r.allow_fixed = false;
      r.grid = Use::kRequired;
      break;
    case Experiment::kMustLink:
      r.snr_sweep = true;
      r.snr = Use::kRequired;
      r.must = Use::kRequired;
      break;
    case Experiment::kCustom:
      r.scalar_link = true;
      r.geometry_strong = Use::kRequired;
      r.snr_sweep = true;
      r.snr = Use::kRequired;
      r.allocation = Use::kRequired;
      r.allow_cr = false;
      r.targets = Use::kRequired;
      break;
  }
  return r;
}

bool is_fig4(Experiment e) {
  return e == Experiment::kFig4OutageMap || e == Experiment::kFig4SnrSweep;
}

class ScenarioParser {
 public:
  explicit ScenarioParser(const json& root) : root_(root, "") {}

  Scenario parse() {
    const json* experiment = root_.find("experiment");
    if (!experiment) throw ValidationError("experiment", "missing; valid names: " + valid_names());
    const auto name = as_string(*experiment, "experiment");
    const auto kind = parse_experiment(name);
    if (!kind) throw ValidationError("experiment", "unknown experiment '" + name + "'; valid names: " + valid_names());
    s_.experiment = *kind;
    const Rules rules = rules_for(*kind);
    const std::string scope = "experiment " + name;

    parse_run_controls();
    if (rules.scalar_link) parse_geometry(rules, scope);
    if (rules.scalar_link) parse_pathloss(scope);
    if (rules.snr != Use::kNo) parse_snr(rules);
    if (rules.allocation != Use::kNo) parse_allocation(rules);
    if (rules.targets != Use::kNo) parse_targets(rules);
    if (rules.grid != Use::kNo) parse_grid_section(rules);
    if (rules.mimo != Use::kNo) parse_mimo();
    if (rules.must != Use::kNo) parse_must();
    root_.reject_unread(scope);
    validate_trials();
    return std::move(s_);
  }

 private:
  void record(std::string field, std::string value) {
    s_.defaults.push_back({std::move(field), std::move(value)});
  }

  static std::string valid_names() {
    std::string out;
    for (const auto& info : kExperiments) {
      if (!out.empty()) out += ", ";
      out += info.name;
    }
    return out;
  }

  void parse_run_controls() {
    if (const json* seed = root_.find("seed")) {
      s_.seed = as_count(*seed, "seed");
    } else {
      s_.seed = 0;
      record("seed", "0");
    }
    if (const json* trials = root_.find("trials")) {
      s_.trials = as_count(*trials, "trials");
      if (s_.trials == 0) throw ValidationError("trials", "must be >= 1");
    } else {
      const bool outage = is_fig4(s_.experiment);
      s_.trials = outage ? kOutageTrials : kErgodicTrials;
      record("trials", std::to_string(s_.trials));
    }
  }

  void validate_trials() {
    if (s_.experiment == Experiment::kFig4OutageMap && s_.trials < kMinMapTrials) {
      throw ValidationError("trials", "outage maps need at least 1000 trials");
    }
    if (s_.experiment == Experiment::kMustLink && s_.trials < kMinLinkTrials) {
      throw ValidationError("trials", "link experiments need at least 10000 trials");
    }
  }

  void parse_geometry(const Rules& rules, const std::string& scope) {
    const bool preset = s_.experiment != Experiment::kCustom;
    const json* geometry = root_.find("geometry");
    std::optional<ObjectReader> reader;
    if (geometry) reader.emplace(*geometry, "geometry");

    const json* bs = reader ? reader->find("bs") : nullptr;
    if (bs) {
      s_.bs = as_position(*bs, "geometry.bs");
    } else {
      s_.bs = {0.0, 0.0};
      record("geometry.bs", "[0, 0]");
    }

    const json* weak = reader ? reader->find("weak_user") : nullptr;
    if (weak) {
      s_.weak_user = as_position(*weak, "geometry.weak_user");
    } else if (preset) {
      s_.weak_user = {5.0, 0.0};
      record("geometry.weak_user", "[5, 0]");
    } else {
      throw ValidationError("geometry.weak_user", "required by " + scope);
    }

    if (rules.geometry_strong != Use::kNo) {
      const json* strong = reader ? reader->find("strong_user") : nullptr;
      if (!strong) throw ValidationError("geometry.strong_user", "required by " + scope);
      s_.strong_user = as_position(*strong, "geometry.strong_user");
    }
    if (reader) reader->reject_unread(scope);
  }

  void parse_pathloss(const std::string& scope) {
    const bool preset = s_.experiment != Experiment::kCustom;
    const json* section = root_.find("pathloss");
    std::optional<ObjectReader> reader;
    if (section) reader.emplace(*section, "pathloss");

    double exponent = 3.0;
    if (const json* e = reader ? reader->find("exponent") : nullptr) {
      exponent = as_number(*e, "pathloss.exponent");
    } else if (preset) {
      record("pathloss.exponent", "3");
    } else {
      throw ValidationError("pathloss.exponent", "required by " + scope);
    }
    double bound = 1.0;
    if (const json* b = reader ? reader->find("bound") : nullptr) {
      bound = as_number(*b, "pathloss.bound");
    } else {
      record("pathloss.bound", "1");
    }
    if (reader) reader->reject_unread(scope);
    if (!(exponent > 0.0)) throw ValidationError("pathloss.exponent", "must be positive");
    if (!(bound >= 1.0)) throw ValidationError("pathloss.bound", "must be >= 1");
    s_.pathloss = PathLossModel(exponent, bound);
  }

  void parse_snr(const Rules& rules) {
    if (const json* snr = root_.find("snr_db")) {
      s_.snr_db = as_number_list(*snr, "snr_db");
    } else if (rules.snr == Use::kRequired) {
      throw ValidationError("snr_db", "required by experiment " + std::string(to_string(s_.experiment)));
    } else {
      const double preset = is_fig4(s_.experiment) ? 30.0 : 20.0;
      s_.snr_db = {preset};
      record("snr_db", render_number(preset));
    }
    if (!rules.snr_sweep && s_.snr_db.size() != 1) {
      throw ValidationError("snr_db", "this experiment takes a single SNR value");
    }
    require_increasing(s_.snr_db, "snr_db");
    s_.rho.clear();
    for (double db : s_.snr_db) s_.rho.push_back(std::pow(10.0, db / 10.0));
  }

  void parse_allocation(const Rules& rules) {
    const json* section = root_.find("allocation");
    if (!section) {
      if (rules.allocation == Use::kRequired) {
        throw ValidationError("allocation", "required by experiment " + std::string(to_string(s_.experiment)));
      }
      if (is_fig4(s_.experiment)) {
        s_.allocation = FixedSplit{0.8, 0.2};
        record("allocation", "a_weak=0.8, a_strong=0.2");
      } else if (s_.experiment == Experiment::kFig5FixedAlloc) {
        s_.allocation = FixedSplit{0.875, 0.125};
        record("allocation", "a_weak=0.875, a_strong=0.125");
      } else {
        s_.allocation = CrTarget{0.5};
        record("allocation", "cr_target=0.5");
      }
      return;
    }
    ObjectReader reader(*section, "allocation");
    if (const json* target = reader.find("cr_target")) {
      if (!rules.allow_cr) throw ValidationError("allocation.cr_target", "this experiment uses a fixed power split");
      if (reader.has("a_weak") || reader.has("a_strong")) {
        throw ValidationError("allocation", "give either cr_target or a_weak/a_strong");
      }
      const double r = as_number(*target, "allocation.cr_target");
      if (r < 0.0) throw ValidationError("allocation.cr_target", "must be non-negative");
      s_.allocation = CrTarget{r};
    } else {
      if (!rules.allow_fixed) throw ValidationError("allocation", "this experiment needs cr_target");
      const json* a_weak = reader.find("a_weak");
      const json* a_strong = reader.find("a_strong");
      if (!a_weak || !a_strong) throw ValidationError("allocation", "needs a_weak and a_strong, or cr_target");
      FixedSplit split{as_number(*a_weak, "allocation.a_weak"), as_number(*a_strong, "allocation.a_strong")};
      try {
        rates::PowerAllocation::fixed(split.a_weak, split.a_strong);
      } catch (const std::invalid_argument& e) {
        throw ValidationError("allocation", e.what());
      }
      s_.allocation = split;
    }
    reader.reject_unread("allocation");
  }

  void parse_targets(const Rules& rules) {
    const json* section = root_.find("targets");
    if (!section) {
      if (rules.targets == Use::kRequired) {
        throw ValidationError("targets", "required by experiment " + std::string(to_string(s_.experiment)));
      }
      s_.targets = rates::TargetRates{0.5, 0.5};
      record("targets", "weak=0.5, strong=0.5");
      return;
    }
    ObjectReader reader(*section, "targets");
    const json* weak = reader.find("weak");
    const json* strong = reader.find("strong");
    if (!weak || !strong) throw ValidationError("targets", "needs weak and strong");
    rates::TargetRates t{as_number(*weak, "targets.weak"), as_number(*strong, "targets.strong")};
    if (t.weak < 0.0) throw ValidationError("targets.weak", "must be non-negative");
    if (t.strong < 0.0) throw ValidationError("targets.strong", "must be non-negative");
    reader.reject_unread("targets");
    s_.targets = t;
  }

  void parse_grid_section(const Rules& rules) {
    const json* section = root_.find("grid");
    if (!section) {
      if (rules.grid == Use::kRequired) {
        throw ValidationError("grid", "required by experiment " + std::string(to_string(s_.experiment)));
      }
      return;
    }
    s_.grid = parse_grid(*section, "grid");
  }

  void parse_mimo() {
    const json* section = root_.find("mimo");
    if (!section) throw ValidationError("mimo", "required by experiment Fig3Scaling");
    ObjectReader reader(*section, "mimo");
    MimoSpec spec;
    const json* antennas = reader.find("antennas");
    if (!antennas) throw ValidationError("mimo.antennas", "required");
    const auto values = as_number_list(*antennas, "mimo.antennas");
    require_increasing(values, "mimo.antennas");
    for (double v : values) {
      if (v < 1.0 || v != std::floor(v) || v > 256.0) {
        throw ValidationError("mimo.antennas", "antenna counts must be integers in [1, 256]");
      }
      spec.antennas.push_back(static_cast<int>(v));
    }
    if (const json* scale = reader.find("weak_gain_scale")) {
      spec.weak_gain_scale = as_number(*scale, "mimo.weak_gain_scale");
    } else {
      record("mimo.weak_gain_scale", "0.25");
    }
    if (const json* p = reader.find("power_strong_db")) {
      spec.power_strong_db = as_number(*p, "mimo.power_strong_db");
    } else {
      record("mimo.power_strong_db", "3");
    }
    if (const json* p = reader.find("power_weak_db")) {
      spec.power_weak_db = as_number(*p, "mimo.power_weak_db");
    } else {
      record("mimo.power_weak_db", "6");
    }
    reader.reject_unread("mimo");
    if (!(spec.weak_gain_scale > 0.0) || spec.weak_gain_scale > 1.0) {
      throw ValidationError("mimo.weak_gain_scale", "must lie in (0, 1]");
    }
    spec.power_strong = std::pow(10.0, spec.power_strong_db / 10.0);
    spec.power_weak = std::pow(10.0, spec.power_weak_db / 10.0);
    s_.mimo = spec;
  }

  void parse_must() {
    const json* section = root_.find("must");
    if (!section) throw ValidationError("must", "required by experiment MustLink");
    ObjectReader reader(*section, "must");
    MustSpec spec;
    auto modulation = [&](std::string_view key) {
      const json* v = reader.find(key);
      const std::string path = reader.path(key);
      if (!v) throw ValidationError(path, "required (QPSK or 16QAM)");
      const auto m = must::parse_modulation(as_string(*v, path));
      if (!m) throw ValidationError(path, "expected QPSK or 16QAM");
      return *m;
    };
    spec.far = modulation("far");
    spec.near = modulation("near");
    const json* ratio = reader.find("power_ratio");
    if (!ratio) throw ValidationError("must.power_ratio", "required");
    spec.power_ratio = as_number(*ratio, "must.power_ratio");
    if (!(spec.power_ratio > 0.5) || !(spec.power_ratio < 1.0)) {
      throw ValidationError("must.power_ratio", "must lie in (0.5, 1)");
    }
    if (const json* cats = reader.find("categories")) {
      if (!cats->is_array() || cats->empty()) {
        throw ValidationError("must.categories", "expected a non-empty list");
      }
      for (std::size_t i = 0; i < cats->size(); ++i) {
        const std::string path = "must.categories[" + std::to_string(i) + "]";
        const auto c = must::parse_category(as_string((*cats)[i], path));
        if (!c) throw ValidationError(path, "expected Cat1, Cat2 or Cat3");
        if (std::find(spec.categories.begin(), spec.categories.end(), *c) != spec.categories.end()) {
          throw ValidationError(path, "duplicate category");
        }
        spec.categories.push_back(*c);
      }
    } else {
      spec.categories = {must::Category::kCat1, must::Category::kCat2, must::Category::kCat3};
      record("must.categories", "Cat1, Cat2, Cat3");
    }
    reader.reject_unread("must");
    s_.must = spec;
  }

  ObjectReader root_;
  Scenario s_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json position_json(const Position& p) { return json::array({p.x, p.y}); }

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& info : kExperiments) {
    if (info.kind == e) return info.name;
  }
  return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& info : kExperiments) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> out;
    for (const auto& info : kExperiments) out.push_back(info.kind);
    return out;
  }();
  return all;
}

std::string_view describe(Experiment e) {
  for (const auto& info : kExperiments) {
    if (info.kind == e) return info.description;
  }
  return "";
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + e.what(),
                     line, column);
  }
  return ScenarioParser(root).parse();
}

Scenario with_seed(Scenario scenario, std::uint64_t seed) {
  scenario.seed = seed;
  std::erase_if(scenario.defaults, [](const AppliedDefault& d) { return d.field == "seed"; });
  return scenario;
}

std::string canonical_json(const Scenario& s) {
  json j;
  j["experiment"] = std::string(to_string(s.experiment));
  j["seed"] = s.seed;
  j["trials"] = s.trials;
  const Rules rules = rules_for(s.experiment);
  if (rules.scalar_link) {
    j["geometry"]["bs"] = position_json(s.bs);
    j["geometry"]["weak_user"] = position_json(s.weak_user);
    if (s.strong_user) j["geometry"]["strong_user"] = position_json(*s.strong_user);
    j["pathloss"] = {{"exponent", s.pathloss.exponent()}, {"bound", s.pathloss.bound()}};
  }
  if (!s.snr_db.empty()) j["snr_db"] = s.snr_db;
  if (s.allocation) {
    if (const auto* split = std::get_if<FixedSplit>(&*s.allocation)) {
      j["allocation"] = {{"a_weak", split->a_weak}, {"a_strong", split->a_strong}};
    } else {
      j["allocation"] = {{"cr_target", std::get<CrTarget>(*s.allocation).r_weak}};
    }
  }
  if (s.targets) j["targets"] = {{"weak", s.targets->weak}, {"strong", s.targets->strong}};
  if (!s.grid.empty()) {
    json points = json::array();
    for (const auto& p : s.grid) points.push_back(position_json(p));
    j["grid"] = points;
  }
  if (s.mimo) {
    j["mimo"] = {{"antennas", s.mimo->antennas},
                 {"weak_gain_scale", s.mimo->weak_gain_scale},
                 {"power_strong_db", s.mimo->power_strong_db},
                 {"power_weak_db", s.mimo->power_weak_db}};
  }
  if (s.must) {
    json cats = json::array();
    for (auto c : s.must->categories) cats.push_back(std::string(must::to_string(c)));
    j["must"] = {{"far", std::string(must::to_string(s.must->far))},
                 {"near", std::string(must::to_string(s.must->near))},
                 {"power_ratio", s.must->power_ratio},
                 {"categories", cats}};
  }
  return j.dump();
}

std::string scenario_hash(const Scenario& scenario) {
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char c : canonical_json(scenario)) {
    hash ^= c;
    hash *= 0x100000001B3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace noma::harness
