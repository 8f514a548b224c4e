#include "cartilab/friction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace cartilab::friction {

void FrictionTrial::validate() const {
  if (sweep.empty()) throw DomainError(fmt::format("condition '{}': empty sweep", condition));
  if (!(normal_load.si() > 0.0)) {
    throw DomainError(fmt::format("condition '{}': normal load must be positive", condition));
  }
  if (increment && !(increment->si() > 0.0)) {
    throw DomainError(fmt::format("condition '{}': increment must be positive", condition));
  }
  bool seen_slip = false;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const auto& p = sweep[i];
    if (!(std::isfinite(p.counterweight.si()) && p.counterweight.si() >= 0.0)) {
      throw DomainError(fmt::format("condition '{}': negative counterweight", condition));
    }
    if (i > 0 && !(p.counterweight > sweep[i - 1].counterweight)) {
      throw DomainError(fmt::format(
          "condition '{}': counterweights must be strictly increasing ({} g after {} g)",
          condition, units::in_grams(p.counterweight),
          units::in_grams(sweep[i - 1].counterweight)));
    }
    if (seen_slip && !p.slipped) {
      throw DomainError(fmt::format(
          "condition '{}': non-monotone slip sequence (held at {} g after slipping)", condition,
          units::in_grams(p.counterweight)));
    }
    seen_slip = seen_slip || p.slipped;
  }
}

SlipThreshold slip_threshold(const FrictionTrial& trial) {
  trial.validate();
  for (const auto& p : trial.sweep) {
    if (p.slipped) return {p.counterweight, false};
  }
  return {trial.sweep.back().counterweight, true};
}

double friction_coefficient(Mass normal_load, Mass slip_weight) {
  if (!(normal_load.si() > 0.0)) throw DomainError("normal load must be positive");
  if (!(slip_weight.si() >= 0.0)) throw DomainError("slip weight must be non-negative");
  return slip_weight / normal_load;
}

std::string FrictionRow::rendered(int decimals) const {
  return fmt::format("{}{:.{}f}", censored ? ">= " : "", mu, decimals);
}

std::vector<FrictionRow> build_table(std::span<const FrictionTrial> trials) {
  if (trials.empty()) throw DomainError("at least one trial is required");
  std::set<std::string> labels;
  std::vector<FrictionRow> rows;
  rows.reserve(trials.size());
  for (const auto& t : trials) {
    if (!labels.insert(t.condition).second) {
      throw DomainError(fmt::format("duplicate condition '{}'", t.condition));
    }
    const auto threshold = slip_threshold(t);
    FrictionRow row;
    row.condition = t.condition;
    row.normal_load = t.normal_load;
    row.slip_weight = threshold.weight;
    row.censored = threshold.censored;
    row.mu = friction_coefficient(t.normal_load, threshold.weight);
    if (t.increment) row.mu_uncertainty = *t.increment / t.normal_load;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, const char* column, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(fmt::format("column {}: '{}' is not a number", column, field), line_no);
  }
  return v;
}

}  // namespace

std::vector<FrictionTrial> parse_trials_csv(std::istream& in,
                                            const std::map<std::string, Mass>& increments) {
  static constexpr std::string_view kHeader = "condition,normal_load_g,counterweight_g,slipped";
  std::vector<FrictionTrial> trials;
  std::vector<std::size_t> first_line;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw ParseError(fmt::format("expected header '{}', got '{}'", kHeader, line), line_no);
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != 4) {
      throw ParseError(fmt::format("expected 4 columns, got {}", fields.size()), line_no);
    }
    if (fields[0].empty()) throw ParseError("empty condition label", line_no);
    const double n = parse_number(fields[1], "normal_load_g", line_no);
    const double w = parse_number(fields[2], "counterweight_g", line_no);
    if (n <= 0.0) throw ParseError("normal_load_g must be positive", line_no);
    if (w < 0.0) throw ParseError("counterweight_g must be non-negative", line_no);
    bool slipped = false;
    if (fields[3] == "1") {
      slipped = true;
    } else if (fields[3] != "0") {
      throw ParseError(fmt::format("slipped must be 0 or 1, got '{}'", fields[3]), line_no);
    }

    const std::string label(fields[0]);
    auto it = std::find_if(trials.begin(), trials.end(),
                           [&](const FrictionTrial& t) { return t.condition == label; });
    if (it == trials.end()) {
      FrictionTrial t;
      t.condition = label;
      t.normal_load = units::grams(n);
      if (auto inc = increments.find(label); inc != increments.end()) t.increment = inc->second;
      trials.push_back(std::move(t));
      first_line.push_back(line_no);
      it = std::prev(trials.end());
    } else if (it->normal_load != units::grams(n)) {
      throw ParseError(fmt::format("condition '{}': normal load changed from {} g to {} g", label,
                                   units::in_grams(it->normal_load), n),
                       line_no);
    }
    it->sweep.push_back({units::grams(w), slipped});
  }
  if (!header_seen) throw ParseError("empty trials file: header missing");
  if (trials.empty()) throw ParseError("trials file has a header but no rows");
  for (std::size_t i = 0; i < trials.size(); ++i) {
    try {
      trials[i].validate();
    } catch (const DomainError& e) {
      throw ParseError(e.what(), first_line[i]);
    }
  }
  return trials;
}

namespace {

// Grams survive the kg round trip with ~1e-13 noise; print them cleanly.
double clean_grams(Mass m) { return std::round(units::in_grams(m) * 1e9) / 1e9; }

}  // namespace

std::string to_csv(std::span<const FrictionRow> rows) {
  std::string out = "condition,N_g,W_g,mu,mu_unc,censored\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.condition, clean_grams(r.normal_load),
                       clean_grams(r.slip_weight), r.mu,
                       r.mu_uncertainty ? fmt::format("{}", *r.mu_uncertainty) : "unknown",
                       r.censored ? 1 : 0);
  }
  return out;
}

nlohmann::json to_json(std::span<const FrictionRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["condition"] = r.condition;
    j["N_g"] = clean_grams(r.normal_load);
    j["W_g"] = clean_grams(r.slip_weight);
    j["mu"] = r.mu;
    j["mu_unc"] = r.mu_uncertainty ? nlohmann::json(*r.mu_uncertainty) : nlohmann::json("unknown");
    j["censored"] = r.censored;
    j["display"] = r.rendered();
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace cartilab::friction
