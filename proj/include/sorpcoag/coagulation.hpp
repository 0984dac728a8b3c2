#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sorpcoag/array2d.hpp"
#include "sorpcoag/field.hpp"
#include "sorpcoag/mesh.hpp"
#include "sorpcoag/rates.hpp"

namespace sorpcoag {

/// What happens to a coagulating pair whose discrete ratio V# reaches 1.
enum class OverflowPolicy {
  clamp,  // deposit in the top r-cell i = I; keeps sum C = 0
  drop,   // discard the gain; the loss is still applied
};

const char* to_string(OverflowPolicy policy);

/// V# of the pair (j1,i1) + (j2,i2) in units of dr, as the exact rational
/// num/den. With edges p = j dp and r = i dr,
///   V#/dr = ((i1+1)(j1+1) + (i2+1)(j2+1)) / (j1 + j2).
/// The pair j1 = j2 = 0 has a zero denominator and uses cell centres
/// instead: V#/dr = (i1 + i2 + 1) / 2.
struct PairRatio {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

PairRatio pair_ratio(int j1, int i1, int j2, int i2);
double v_sharp(const GridSpec& grid, int j1, int i1, int j2, int i2);

inline constexpr int kOverflowCell = -1;

/// r-cell receiving the pair, floor(V#/dr), or kOverflowCell when V# >= 1
/// under the drop policy. Requires j1 + j2 <= J.
int target_cell(const GridSpec& grid, OverflowPolicy policy, int j1, int i1, int j2, int i2);

/// Precomputed target cells for every ordered pair with j1 + j2 <= J.
class TargetTable {
 public:
  TargetTable() = default;
  int operator()(int j1, int i1, int j2, int i2) const;
  std::size_t entries() const { return cells_.size(); }

 private:
  friend TargetTable precompute_targets(const GridSpec&, OverflowPolicy);
  static constexpr std::uint16_t kOverflow = 0xFFFF;
  int J_ = 0;
  int r_cells_ = 0;
  std::vector<std::size_t> offsets_;  // per (j1, j2) block
  std::vector<std::uint16_t> cells_;
};

TargetTable precompute_targets(const GridSpec& grid, OverflowPolicy policy);

/// Loop-invariant data of the coagulation operator.
struct CoagTables {
  KernelTable kernel;
  OverflowPolicy policy = OverflowPolicy::clamp;
  /// Present when built with TargetMode::precomputed; otherwise targets
  /// are evaluated from pair_ratio on demand.
  std::optional<TargetTable> targets;

  int target(const GridSpec& grid, int j1, int i1, int j2, int i2) const {
    return targets ? (*targets)(j1, i1, j2, i2) : target_cell(grid, policy, j1, i1, j2, i2);
  }
};

enum class TargetMode {
  automatic,    // precompute only when the pairwise path will need it
  precomputed,
  on_the_fly,
};

CoagTables make_coag_tables(const KernelModel& kernel, const GridSpec& grid,
                            OverflowPolicy policy, TargetMode mode = TargetMode::automatic);

/// Per-cell coagulation term C_{j,i} (includes the (dp dr)^2 factors).
struct CoagIncrement {
  Array2D values;
  /// Gain discarded by the drop policy; zero under clamp.
  double dropped_gain = 0.0;
};

struct CoagTerms {
  bool gain = true;
  bool loss = true;
};

struct CoagOptions {
  CoagTerms terms;
  /// Worker threads for the gain sum; each thread owns whole target
  /// columns so the result does not depend on the thread count.
  unsigned threads = 1;
};

/// Reordered-sum evaluation of C_{j,i}. Separable kernels are summed over
/// runs of partners sharing a target cell; other kernels go pair by pair.
CoagIncrement coag_increment(const Field& f, const CoagTables& tables, const GridSpec& grid,
                             const CoagOptions& options = {});

enum class PairOrder { first_outer, second_outer };

/// Literal pair-by-pair evaluation of the reordered sum. `order` selects
/// which partner of the pair drives the outer loop.
CoagIncrement coag_increment_pairwise(const Field& f, const CoagTables& tables,
                                      const GridSpec& grid, CoagTerms terms = {},
                                      PairOrder order = PairOrder::first_outer);

/// Corner fluxes C_{j-1/2,i-1/2}, shape (J+2) x (I+2); row 0 and column 0
/// are the zero boundary values.
Array2D coag_corner_fluxes(const Field& f, const CoagTables& tables, const GridSpec& grid,
                           CoagTerms terms = {});

/// C_{j,i} as the double difference of the corner fluxes.
CoagIncrement coag_flux_form(const Field& f, const CoagTables& tables, const GridSpec& grid,
                             CoagTerms terms = {});

}  // namespace sorpcoag
