#pragma once

// Pull-to-slip friction trials. A loaded frame of mass N is placed on the
// sheet and pulled by a counterweight W; W is raised until the frame slips,
// and mu = W / N.

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cartilab/units.hpp"

namespace cartilab::friction {

using units::Mass;

struct Placement {
  Mass counterweight;
  bool slipped = false;
};

struct FrictionTrial {
  std::string condition;
  Mass normal_load;
  std::vector<Placement> sweep;  // in test order
  std::optional<Mass> increment;

  /// Throws DomainError on an empty sweep, non-increasing weights or a
  /// slip followed by a hold.
  void validate() const;
};

struct SlipThreshold {
  Mass weight;
  bool censored = false;  // never slipped; weight is the last one tested
};

SlipThreshold slip_threshold(const FrictionTrial& trial);

/// W / N at full precision.
double friction_coefficient(Mass normal_load, Mass slip_weight);

struct FrictionRow {
  std::string condition;
  Mass normal_load;
  Mass slip_weight;
  double mu = 0.0;  // lower bound when censored
  std::optional<double> mu_uncertainty;  // increment / N, absent when unknown
  bool censored = false;

  /// "0.079" or ">= 0.520" at the given number of decimals.
  std::string rendered(int decimals = 3) const;
};

/// One row per trial, in input order. Throws DomainError on duplicate labels.
std::vector<FrictionRow> build_table(std::span<const FrictionTrial> trials);

/// Reads `condition,normal_load_g,counterweight_g,slipped`. Rows of one
/// condition are grouped in order of first appearance. Lines starting with
/// '#' and blank lines are skipped. Throws ParseError with the line number.
std::vector<FrictionTrial> parse_trials_csv(std::istream& in,
                                            const std::map<std::string, Mass>& increments = {});

/// `condition,N_g,W_g,mu,mu_unc,censored`, mu at full precision.
std::string to_csv(std::span<const FrictionRow> rows);
nlohmann::json to_json(std::span<const FrictionRow> rows);

}  // namespace cartilab::friction
