#include "sorpcoag/coagulation.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include "sorpcoag/errors.hpp"

namespace sorpcoag {

const char* to_string(OverflowPolicy policy) {
  return policy == OverflowPolicy::clamp ? "clamp" : "drop";
}

PairRatio pair_ratio(int j1, int i1, int j2, int i2) {
  if (j1 == 0 && j2 == 0) return {static_cast<std::int64_t>(i1) + i2 + 1, 2};
  const std::int64_t num = static_cast<std::int64_t>(i1 + 1) * (j1 + 1) +
                           static_cast<std::int64_t>(i2 + 1) * (j2 + 1);
  return {num, static_cast<std::int64_t>(j1) + j2};
}

double v_sharp(const GridSpec& grid, int j1, int i1, int j2, int i2) {
  const PairRatio q = pair_ratio(j1, i1, j2, i2);
  return static_cast<double>(q.num) / static_cast<double>(q.den) * grid.dr;
}

int target_cell(const GridSpec& grid, OverflowPolicy policy, int j1, int i1, int j2, int i2) {
  const PairRatio q = pair_ratio(j1, i1, j2, i2);
  const std::int64_t t = q.num / q.den;
  if (t <= grid.I) return static_cast<int>(t);
  return policy == OverflowPolicy::clamp ? grid.I : kOverflowCell;
}

int TargetTable::operator()(int j1, int i1, int j2, int i2) const {
  const std::size_t base = offsets_[static_cast<std::size_t>(j1) * (J_ + 1) + j2];
  const std::uint16_t c =
      cells_[base + static_cast<std::size_t>(i1) * r_cells_ + static_cast<std::size_t>(i2)];
  return c == kOverflow ? kOverflowCell : c;
}

TargetTable precompute_targets(const GridSpec& grid, OverflowPolicy policy) {
  TargetTable table;
  table.J_ = grid.J;
  table.r_cells_ = grid.r_cells();
  const std::size_t block = static_cast<std::size_t>(grid.r_cells()) * grid.r_cells();
  table.offsets_.assign(static_cast<std::size_t>(grid.p_cells()) * grid.p_cells(), 0);
  std::size_t total = 0;
  for (int j1 = 0; j1 <= grid.J; ++j1) {
    for (int j2 = 0; j1 + j2 <= grid.J; ++j2) {
      table.offsets_[static_cast<std::size_t>(j1) * grid.p_cells() + j2] = total;
      total += block;
    }
  }
  if (total > (std::size_t{1} << 30)) {
    throw Error(ErrorKind::config, "target table too large; use on-the-fly targets");
  }
  table.cells_.resize(total);
  std::size_t k = 0;
  for (int j1 = 0; j1 <= grid.J; ++j1) {
    for (int j2 = 0; j1 + j2 <= grid.J; ++j2) {
      for (int i1 = 0; i1 <= grid.I; ++i1) {
        for (int i2 = 0; i2 <= grid.I; ++i2) {
          const int t = target_cell(grid, policy, j1, i1, j2, i2);
          table.cells_[k++] =
              t == kOverflowCell ? TargetTable::kOverflow : static_cast<std::uint16_t>(t);
        }
      }
    }
  }
  return table;
}

CoagTables make_coag_tables(const KernelModel& kernel, const GridSpec& grid,
                            OverflowPolicy policy, TargetMode mode) {
  CoagTables tables;
  tables.kernel = kernel_cell_average(kernel, grid);
  tables.policy = policy;
  const bool want = mode == TargetMode::precomputed ||
                    (mode == TargetMode::automatic && !tables.kernel.is_separable());
  if (want) tables.targets = precompute_targets(grid, policy);
  return tables;
}

namespace {

// Inclusive-exclusive prefix sums of g along r: row j holds G[0] = 0,
// G[k] = g_{j,0} + ... + g_{j,k-1}.
Array2D row_prefix(const Array2D& g) {
  Array2D G(g.rows(), g.cols() + 1);
  for (std::size_t j = 0; j < g.rows(); ++j) {
    const auto src = g.row(j);
    auto dst = G.row(j);
    double s = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      s += src[i];
      dst[i + 1] = s;
    }
  }
  return G;
}

struct GainContext {
  const GridSpec& grid;
  OverflowPolicy policy;
  const Array2D& g;  // w f
  const Array2D& G;  // row prefix of g
};

// Gain of target column j from the separable kernel, without the
// scale (dp dr)^2 factor. Returns the overflow gain discarded under drop.
double separable_gain_column(const GainContext& ctx, int j, std::span<double> out,
                             std::vector<double>& acc) {
  const int I = ctx.grid.I;
  const int n = I + 1;
  double dropped = 0.0;
  for (int j1 = 0; 2 * j1 <= j; ++j1) {
    const int j2 = j - j1;
    // Target of cells x = i1+1 and y = i2+1 is floor((x A + y B + off) / D).
    std::int64_t A = j1 + 1, B = j2 + 1, D = j, off = 0;
    if (j == 0) {
      A = 1;
      B = 1;
      D = 2;
      off = -1;
    }
    const std::int64_t q = D / A;
    const std::int64_t s = D % A;
    const auto G1 = ctx.G.row(j1);
    const auto g2 = ctx.g.row(j2);
    std::fill(acc.begin(), acc.end(), 0.0);
    double over = 0.0;
    for (int y = 1; y <= n; ++y) {
      const double gy = g2[y - 1];
      if (gy == 0.0) continue;
      const std::int64_t c = y * B + off;
      std::int64_t t = (A + c) / D;
      if (t > I) {
        over += gy * G1[n];
        continue;
      }
      // b: first x whose target exceeds t; e = b A - ((t+1) D - c).
      const std::int64_t num = (t + 1) * D - c;
      std::int64_t b = (num + A - 1) / A;
      std::int64_t e = b * A - num;
      double prev = 0.0;
      // Complete runs end before x = n+1.
      while (b <= n && t < I) {
        const double cur = G1[b - 1];
        acc[t] += gy * (cur - prev);
        prev = cur;
        ++t;
        b += q;
        e -= s;
        if (e < 0) {
          e += A;
          ++b;
        }
      }
      if (b > n) {
        acc[t] += gy * (G1[n] - prev);
      } else {
        // t == I; the remaining x overflow.
        const double cur = G1[b - 1];
        acc[t] += gy * (cur - prev);
        over += gy * (G1[n] - cur);
      }
    }
    const double w = j1 == j2 ? ctx.grid.p_center(j1)
                              : ctx.grid.p_center(j1) + ctx.grid.p_center(j2);
    for (int t = 0; t <= I; ++t) out[t] += w * acc[t];
    if (ctx.policy == OverflowPolicy::clamp) {
      out[I] += w * over;
    } else {
      dropped += w * over;
    }
  }
  return dropped;
}

void separable_gain(const Field& f, const CoagTables& tables, const GridSpec& grid,
                    unsigned threads, CoagIncrement& result) {
  const Array2D& w = tables.kernel.weights();
  Array2D g(grid.p_cells(), grid.r_cells());
  for (std::size_t k = 0; k < g.size(); ++k) g.values()[k] = w.values()[k] * f.values().values()[k];
  const Array2D G = row_prefix(g);
  const GainContext ctx{grid, tables.policy, g, G};

  std::vector<double> dropped(grid.p_cells(), 0.0);
  auto work = [&](unsigned first, unsigned stride) {
    std::vector<double> acc(grid.r_cells());
    for (int j = static_cast<int>(first); j <= grid.J; j += static_cast<int>(stride)) {
      dropped[j] = separable_gain_column(ctx, j, result.values.row(j), acc);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, grid.p_cells()));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
  }

  const double factor = tables.kernel.scale() * grid.cell_volume() * grid.cell_volume();
  for (double& v : result.values.values()) v *= factor;
  double total = 0.0;
  for (double d : dropped) total += d;
  result.dropped_gain = factor * total;
}

void separable_loss(const Field& f, const CoagTables& tables, const GridSpec& grid,
                    Array2D& out) {
  const Array2D& w = tables.kernel.weights();
  // R[m] = sum over columns j' <= m of sum_i w f.
  std::vector<double> R(grid.p_cells());
  double s = 0.0;
  for (int j = 0; j <= grid.J; ++j) {
    for (int i = 0; i <= grid.I; ++i) s += w(j, i) * f(j, i);
    R[j] = s;
  }
  const double vol = grid.cell_volume();
  const double factor = tables.kernel.scale() * vol * vol;
  for (int j = 0; j <= grid.J; ++j) {
    const double pr = grid.p_center(j) * factor * R[grid.J - j];
    for (int i = 0; i <= grid.I; ++i) out(j, i) -= pr * w(j, i) * f(j, i);
  }
}

// Loss of every cell, sum_{j' <= J-j, i'} p_j a f_{j,i} f' (dp dr)^2.
Array2D dense_loss(const Field& f, const KernelTable& a, const GridSpec& grid) {
  Array2D loss(grid.p_cells(), grid.r_cells());
  const double vol = grid.cell_volume();
  for (int j = 0; j <= grid.J; ++j) {
    for (int i = 0; i <= grid.I; ++i) {
      if (f(j, i) == 0.0) continue;
      double s = 0.0;
      for (int j2 = 0; j2 <= grid.J - j; ++j2)
        for (int i2 = 0; i2 <= grid.I; ++i2) s += a(j, i, j2, i2) * f(j2, i2);
      loss(j, i) = grid.p_center(j) * s * f(j, i) * vol * vol;
    }
  }
  return loss;
}

}  // namespace

CoagIncrement coag_increment(const Field& f, const CoagTables& tables, const GridSpec& grid,
                             const CoagOptions& options) {
  if (!tables.kernel.is_separable()) {
    return coag_increment_pairwise(f, tables, grid, options.terms);
  }
  CoagIncrement result{Array2D(grid.p_cells(), grid.r_cells()), 0.0};
  if (tables.kernel.is_zero()) return result;
  if (options.terms.gain) separable_gain(f, tables, grid, options.threads, result);
  if (options.terms.loss) separable_loss(f, tables, grid, result.values);
  return result;
}

CoagIncrement coag_increment_pairwise(const Field& f, const CoagTables& tables,
                                      const GridSpec& grid, CoagTerms terms, PairOrder order) {
  CoagIncrement result{Array2D(grid.p_cells(), grid.r_cells()), 0.0};
  const double vol2 = grid.cell_volume() * grid.cell_volume();
  const KernelTable& a = tables.kernel;

  auto deposit = [&](int j1, int i1, int j2, int i2) {
    const double v = grid.p_center(j1) * a(j1, i1, j2, i2) * f(j1, i1) * f(j2, i2) * vol2;
    const int t = tables.target(grid, j1, i1, j2, i2);
    if (t == kOverflowCell) {
      result.dropped_gain += v;
    } else {
      result.values(j1 + j2, t) += v;
    }
  };

  if (terms.gain) {
    for (int ja = 0; ja <= grid.J; ++ja) {
      for (int ia = 0; ia <= grid.I; ++ia) {
        if (f(ja, ia) == 0.0) continue;
        for (int jb = 0; ja + jb <= grid.J; ++jb) {
          for (int ib = 0; ib <= grid.I; ++ib) {
            if (f(jb, ib) == 0.0) continue;
            if (order == PairOrder::first_outer) {
              deposit(ja, ia, jb, ib);
            } else {
              deposit(jb, ib, ja, ia);
            }
          }
        }
      }
    }
  }
  if (terms.loss) {
    const Array2D loss = dense_loss(f, a, grid);
    for (std::size_t k = 0; k < loss.size(); ++k) result.values.values()[k] -= loss.values()[k];
  }
  return result;
}

Array2D coag_corner_fluxes(const Field& f, const CoagTables& tables, const GridSpec& grid,
                           CoagTerms terms) {
  // Point values at (target column, target row), then 2-D prefix sums:
  // corner (jj, ii) collects targets j < jj, t < ii.
  Array2D point(grid.p_cells(), grid.r_cells());
  const double vol2 = grid.cell_volume() * grid.cell_volume();
  const KernelTable& a = tables.kernel;
  if (terms.gain) {
    for (int j1 = 0; j1 <= grid.J; ++j1)
      for (int j2 = 0; j1 + j2 <= grid.J; ++j2)
        for (int i1 = 0; i1 <= grid.I; ++i1)
          for (int i2 = 0; i2 <= grid.I; ++i2) {
            const int t = tables.target(grid, j1, i1, j2, i2);
            if (t == kOverflowCell) continue;
            point(j1 + j2, t) +=
                grid.p_center(j1) * a(j1, i1, j2, i2) * f(j1, i1) * f(j2, i2) * vol2;
          }
  }
  if (terms.loss) {
    const Array2D loss = dense_loss(f, a, grid);
    for (std::size_t k = 0; k < loss.size(); ++k) point.values()[k] -= loss.values()[k];
  }
  Array2D corner(grid.p_cells() + 1, grid.r_cells() + 1);
  for (int jj = 1; jj <= grid.J + 1; ++jj) {
    for (int ii = 1; ii <= grid.I + 1; ++ii) {
      corner(jj, ii) = point(jj - 1, ii - 1) + corner(jj - 1, ii) + corner(jj, ii - 1) -
                       corner(jj - 1, ii - 1);
    }
  }
  return corner;
}

CoagIncrement coag_flux_form(const Field& f, const CoagTables& tables, const GridSpec& grid,
                             CoagTerms terms) {
  const Array2D corner = coag_corner_fluxes(f, tables, grid, terms);
  CoagIncrement result{Array2D(grid.p_cells(), grid.r_cells()), 0.0};
  for (int j = 0; j <= grid.J; ++j)
    for (int i = 0; i <= grid.I; ++i)
      result.values(j, i) =
          (corner(j + 1, i + 1) - corner(j + 1, i)) - (corner(j, i + 1) - corner(j, i));
  if (terms.gain && tables.policy == OverflowPolicy::drop) {
    const double vol2 = grid.cell_volume() * grid.cell_volume();
    for (int j1 = 0; j1 <= grid.J; ++j1)
      for (int j2 = 0; j1 + j2 <= grid.J; ++j2)
        for (int i1 = 0; i1 <= grid.I; ++i1)
          for (int i2 = 0; i2 <= grid.I; ++i2)
            if (tables.target(grid, j1, i1, j2, i2) == kOverflowCell)
              result.dropped_gain += grid.p_center(j1) * tables.kernel(j1, i1, j2, i2) *
                                     f(j1, i1) * f(j2, i2) * vol2;
  }
  return result;
}

}  // namespace sorpcoag
