#pragma once

// Job configuration: a JSON document with top-level keys field, sequence and job.

#include <gmpxx.h>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclorec/ball.hpp"
#include "cyclorec/bounds.hpp"
#include "cyclorec/lrs.hpp"

namespace cyclorec {

/// Coefficients low degree first, each a coordinate vector in the power basis of Q(zeta_M).
using PolyCoords = std::vector<std::vector<mpq_class>>;

/// A rational prime, optionally narrowed to one prime ideal above it (canonical split order).
struct PrimeSelector {
  unsigned long p = 0;
  std::optional<unsigned> index;
  bool operator==(const PrimeSelector&) const = default;
};

struct JobConfig {
  unsigned conductor = 1;
  std::vector<PolyCoords> f, alpha;

  std::optional<RootSpec> zeta;  // normalized
  std::optional<NRange> n_range;
  std::vector<PrimeSelector> S;
  std::optional<unsigned> r;
  std::optional<mpq_class> eps;
  std::optional<unsigned> M_max, D_max;
  Precision precision = 128;
  std::optional<mpz_class> height_cap;
  std::optional<mpq_class> matveev_C;
  std::optional<long> budget_ms;
  unsigned workers = 1;
  bool allow_zero = false;
  bool allow_negative = true;

  bool operator==(const JobConfig& o) const;

  /// Polynomials over Q(zeta_M); throws ValidationError on invalid sequences.
  ParamLRS sequence() const;
  /// Requires zeta and n_range.
  const RootSpec& root() const;
  const NRange& range() const;
};

/// ParseError carries the line or field, ValidationError the violated precondition.
JobConfig parse_config_text(std::string_view text);
JobConfig parse_config(const std::filesystem::path& path);
std::string serialize(const JobConfig& cfg);

}  // namespace cyclorec
