#include "cartilab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cartilab/error.hpp"
#include "cartilab/presets.hpp"

namespace cartilab::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

// Reads a double-quoted string starting at s[pos] == '"'; pos ends past the quote.
std::string read_quoted(std::string_view s, std::size_t& pos, std::size_t line) {
  std::string out;
  for (++pos; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c == '"') {
      ++pos;
      return out;
    }
    if (c == '\\') {
      if (++pos >= s.size()) break;
      switch (s[pos]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: throw ParseError(fmt::format("unknown escape '\\{}'", s[pos]), line);
      }
      continue;
    }
    out += c;
  }
  throw ParseError("unterminated string", line);
}

// Drops a trailing '#' comment and whitespace; pos is where parsing stopped.
void expect_end(std::string_view s, std::size_t pos, std::size_t line) {
  const auto rest = trim(s.substr(pos));
  if (!rest.empty() && rest.front() != '#') {
    throw ParseError(fmt::format("unexpected text '{}'", rest), line);
  }
}

Value parse_value(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s.empty()) throw ParseError("missing value", line);
  if (s.front() == '"') {
    std::size_t pos = 0;
    std::string str = read_quoted(s, pos, line);
    expect_end(s, pos, line);
    return {std::move(str), line};
  }
  const auto hash = s.find('#');
  const auto tok = trim(s.substr(0, hash));
  if (tok == "true") return {true, line};
  if (tok == "false") return {false, line};
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError(fmt::format("cannot parse value '{}' (strings need double quotes)", tok), line);
  }
  return {v, line};
}

}  // namespace

Document parse_document(std::string_view text) {
  Document doc;
  std::string section;
  doc[section];
  std::size_t line_no = 0;
  std::size_t start = 0;
  std::set<std::string> headers;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto raw = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) throw ParseError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, close - 1)));
      if (section.empty() || !std::all_of(section.begin(), section.end(), bare_key_char)) {
        throw ParseError(fmt::format("bad section name '{}'", section), line_no);
      }
      expect_end(line, close + 1, line_no);
      if (!headers.insert(section).second) {
        throw ParseError(fmt::format("section [{}] appears twice", section), line_no);
      }
      doc[section];
      continue;
    }

    std::string key;
    std::size_t pos = 0;
    if (line.front() == '"') {
      key = read_quoted(line, pos, line_no);
    } else {
      while (pos < line.size() && bare_key_char(line[pos])) ++pos;
      key = std::string(line.substr(0, pos));
    }
    if (key.empty()) throw ParseError("expected a key", line_no);
    const auto rest = trim(line.substr(pos));
    if (rest.empty() || rest.front() != '=') {
      throw ParseError(fmt::format("expected '=' after key '{}'", key), line_no);
    }
    auto& entries = doc[section];
    if (entries.contains(key)) throw ParseError(fmt::format("duplicate key '{}'", key), line_no);
    entries.emplace(key, parse_value(rest.substr(1), line_no));
  }
  return doc;
}

units::Length ToolkitConfig::center_pitch() const {
  return sheet.interval_mode == IntervalMode::gap ? sheet.interval + assembly.cell.hole_side
                                                  : sheet.interval;
}

cycle::Calibration ToolkitConfig::calibration_endpoints() const {
  cycle::Calibration c;
  c.mu_dry = sim.mu_dry;
  c.mu_wet = sim.mu_wet;
  if (sim.film_threshold) c.film_threshold = *sim.film_threshold;
  return c;
}

void ToolkitConfig::validate() const {
  assembly.validate();
  sim.params.validate();
  calibration_endpoints().validate();
  if (!(sim.reservoir.porosity > 0.0 && sim.reservoir.porosity <= 1.0)) {
    throw DomainError("sim.porosity must lie in (0, 1]");
  }
  if (!(sim.reservoir.base_thickness.si() >= 0.0)) throw DomainError("base_thickness must be >= 0");
  if (!(sim.reservoir.capsule_pool.si() >= 0.0)) throw DomainError("capsule_pool must be >= 0");
  if (!(sheet.width.si() > 0.0 && sheet.length.si() > 0.0)) {
    throw DomainError("sheet width and length must be positive");
  }
  if (!(sheet.interval.si() > 0.0)) throw DomainError("sheet.interval must be positive");
  if (!(sheet.cap_radius.si() > 0.0)) throw DomainError("sheet.cap_radius must be positive");
  if (!(sheet.cap_half_angle_deg > 0.0 && sheet.cap_half_angle_deg <= 90.0)) {
    throw DomainError("sheet.cap_half_angle_deg must lie in (0, 90]");
  }
  if (!(sheet.design_load.si() >= 0.0)) throw DomainError("sheet.design_load must be >= 0");
  for (const auto& [name, inc] : friction_increments) {
    if (!(inc.si() > 0.0)) throw DomainError(fmt::format("increment for '{}' must be positive", name));
  }
}

ToolkitConfig default_config() {
  ToolkitConfig c;
  c.assembly = presets::kgf_assembly();
  return c;
}

namespace {

class Reader {
 public:
  Reader(const Document& doc, units::UnitSystem sys) : doc_(doc), sys_(std::move(sys)) {}

  void set_units(units::UnitSystem sys) { sys_ = std::move(sys); }

  // Calls fn(key, value) for each entry, rejecting keys not in `allowed`.
  template <typename Fn>
  void section(const std::string& name, std::initializer_list<std::string_view> allowed, Fn fn) {
    const auto it = doc_.find(name);
    if (it == doc_.end()) return;
    const std::set<std::string_view> keys(allowed);
    for (const auto& [k, v] : it->second) {
      if (!keys.contains(k)) {
        throw ParseError(fmt::format("unknown key '{}' in [{}]", k, name), v.line);
      }
      fn(k, v);
    }
  }

  static double number(const std::string& key, const Value& v) {
    if (const auto* d = std::get_if<double>(&v.data)) return *d;
    throw ParseError(fmt::format("'{}' must be a number", key), v.line);
  }

  static bool boolean(const std::string& key, const Value& v) {
    if (const auto* b = std::get_if<bool>(&v.data)) return *b;
    throw ParseError(fmt::format("'{}' must be true or false", key), v.line);
  }

  static std::string text(const std::string& key, const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    throw ParseError(fmt::format("'{}' must be a quoted string", key), v.line);
  }

  units::Measure measure(const std::string& key, const Value& v) const {
    const auto* s = std::get_if<std::string>(&v.data);
    if (!s) {
      throw ParseError(fmt::format("'{}' needs a unit, e.g. \"2 mm\"", key), v.line);
    }
    try {
      return units::parse_measure(*s, sys_);
    } catch (const Error& e) {
      throw ParseError(fmt::format("'{}': {}", key, e.what()), v.line);
    }
  }

  template <units::Dimension D>
  units::Quantity<D> quantity(const std::string& key, const Value& v) const {
    try {
      return measure(key, v).as<D>();
    } catch (const DimensionError& e) {
      throw ParseError(fmt::format("'{}': {}", key, e.what()), v.line);
    }
  }

  const units::UnitSystem& units() const { return sys_; }

  const Document& doc() const { return doc_; }

 private:
  const Document& doc_;
  units::UnitSystem sys_;
};

}  // namespace

ToolkitConfig from_document(const Document& doc, const std::filesystem::path& base_dir) {
  static const std::set<std::string> known{"",    "units", "material", "cell", "sheet",
                                           "sim", "friction.increments", "paths"};
  for (const auto& [name, entries] : doc) {
    if (!known.contains(name)) {
      const std::size_t line = entries.empty() ? 0 : entries.begin()->second.line;
      throw ParseError(fmt::format("unknown section [{}]", name), line);
    }
  }
  if (const auto it = doc.find(""); it != doc.end() && !it->second.empty()) {
    throw ParseError(fmt::format("key '{}' outside any section", it->second.begin()->first),
                     it->second.begin()->second.line);
  }

  ToolkitConfig c = default_config();
  Reader r(doc, c.unit_system);

  units::UnitMode mode = c.unit_system.mode();
  double gravity = c.unit_system.gravity();
  r.section("units", {"system", "gravity"}, [&](const std::string& k, const Value& v) {
    if (k == "system") {
      try {
        mode = units::parse_unit_mode(Reader::text(k, v));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), v.line);
      }
    } else {
      gravity = Reader::number(k, v);
      if (!(gravity > 0.0)) throw ParseError("gravity must be positive", v.line);
    }
  });
  c.unit_system = units::UnitSystem(mode, gravity);
  r.set_units(c.unit_system);

  auto& m = c.assembly.material;
  r.section("material", {"young_modulus", "poisson_ratio", "shore_a"},
            [&](const std::string& k, const Value& v) {
              if (k == "young_modulus") {
                m.young_modulus = r.quantity<units::dim::pressure>(k, v);
              } else if (k == "poisson_ratio") {
                m.poisson_ratio = Reader::number(k, v);
              } else {
                m.shore_a = Reader::number(k, v);
              }
            });

  auto& cell = c.assembly.cell;
  r.section("cell", {"outer_side", "hole_side", "height", "count"},
            [&](const std::string& k, const Value& v) {
              if (k == "count") {
                const double n = Reader::number(k, v);
                if (!(n >= 1.0 && n == std::floor(n) && n < 1e9)) {
                  throw ParseError("cell count must be a positive integer", v.line);
                }
                c.assembly.cell_count = static_cast<int>(n);
                return;
              }
              const auto q = r.quantity<units::dim::length>(k, v);
              if (k == "outer_side") cell.outer_side = q;
              if (k == "hole_side") cell.hole_side = q;
              if (k == "height") cell.height = q;
            });

  auto& s = c.sheet;
  r.section("sheet",
            {"width", "length", "interval", "interval_mode", "cap_radius", "cap_half_angle_deg",
             "base_sheet", "base_thickness", "design_load"},
            [&](const std::string& k, const Value& v) {
              if (k == "width") s.width = r.quantity<units::dim::length>(k, v);
              else if (k == "length") s.length = r.quantity<units::dim::length>(k, v);
              else if (k == "interval") s.interval = r.quantity<units::dim::length>(k, v);
              else if (k == "cap_radius") s.cap_radius = r.quantity<units::dim::length>(k, v);
              else if (k == "cap_half_angle_deg") s.cap_half_angle_deg = Reader::number(k, v);
              else if (k == "base_sheet") c.sim.reservoir.base_sheet = Reader::boolean(k, v);
              else if (k == "base_thickness") {
                c.sim.reservoir.base_thickness = r.quantity<units::dim::length>(k, v);
              } else if (k == "interval_mode") {
                const auto t = Reader::text(k, v);
                if (t == "gap") s.interval_mode = IntervalMode::gap;
                else if (t == "center") s.interval_mode = IntervalMode::center;
                else throw ParseError("interval_mode must be \"gap\" or \"center\"", v.line);
              } else {
                // A mass is taken as the weight it exerts under the configured gravity.
                const auto meas = r.measure(k, v);
                if (meas.dimension() == units::dim::mass) {
                  s.design_load = units::mass_to_load(meas.as<units::dim::mass>(), r.units());
                } else if (meas.dimension() == units::dim::force) {
                  s.design_load = meas.as<units::dim::force>();
                } else {
                  throw ParseError("design_load must be a force or a mass", v.line);
                }
              }
            });

  auto& sim = c.sim;
  r.section("sim",
            {"eta", "rho", "rho_direct", "porosity", "mu_dry", "mu_wet", "film_threshold",
             "capsule_pool"},
            [&](const std::string& k, const Value& v) {
              if (k == "film_threshold") sim.film_threshold = r.quantity<units::dim::volume>(k, v);
              else if (k == "capsule_pool") sim.reservoir.capsule_pool = r.quantity<units::dim::volume>(k, v);
              else {
                const double x = Reader::number(k, v);
                if (k == "eta") sim.params.efficiency = x;
                else if (k == "rho") sim.params.replenish = x;
                else if (k == "rho_direct") sim.params.replenish_direct = x;
                else if (k == "porosity") sim.reservoir.porosity = x;
                else if (k == "mu_dry") sim.mu_dry = x;
                else sim.mu_wet = x;
              }
            });

  if (const auto it = doc.find("friction.increments"); it != doc.end()) {
    for (const auto& [k, v] : it->second) {
      c.friction_increments[k] = r.quantity<units::dim::mass>(k, v);
    }
  }

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  r.section("paths", {"friction_data", "protocol_base", "protocol_nobase"},
            [&](const std::string& k, const Value& v) {
              const auto p = resolve(Reader::text(k, v));
              if (k == "friction_data") c.paths.friction_data = p;
              else if (k == "protocol_base") c.paths.protocol_base = p;
              else c.paths.protocol_nobase = p;
            });

  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ParseError(fmt::format("invalid configuration: {}", e.what()));
  }
  return c;
}

ToolkitConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open config '{}'", file.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return from_document(parse_document(ss.str()), file.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", file.string(), e.what()));
  }
}

}  // namespace cartilab::config
