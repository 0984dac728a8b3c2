#pragma once

#include <functional>
#include <string>

#include "sorpcoag/array2d.hpp"
#include "sorpcoag/mesh.hpp"

namespace sorpcoag {

class Field;

enum class RateKind { langmuir, section4, constant, user };
enum class KernelKind { constant, separable, user };

const char* to_string(RateKind kind);
const char* to_string(KernelKind kind);

/// Sorption rate V(u,p,r) = k(p,r) u - l(p,r).
///
/// Built-in kinds:
///  - langmuir:  k = k0 p^alpha (1-r)^alpha,  l = l0 p^beta r^beta
///  - section4:  k = 4 p (1-r),               l = r
///  - constant:  k = k0,                      l = l0
/// A user model supplies k and l as callables together with certified sup
/// bounds on (0,P)x(0,1).
class RateModel {
 public:
  using Coefficient = std::function<double(double p, double r)>;

  static RateModel langmuir(double k0, double alpha, double l0, double beta);
  static RateModel section4();
  static RateModel constant(double k0, double l0);
  static RateModel user(Coefficient k, Coefficient l, double k_sup, double l_sup);

  RateKind kind() const { return kind_; }
  double k0() const { return k0_; }
  double alpha() const { return alpha_; }
  double l0() const { return l0_; }
  double beta() const { return beta_; }

  double gain(double p, double r) const;  // k(p,r)
  double loss(double p, double r) const;  // l(p,r)
  double velocity(double u, double p, double r) const { return gain(p, r) * u - loss(p, r); }
  /// dV/dr, analytic for built-in kinds, centred difference for user models.
  double velocity_dr(double u, double p, double r) const;

  /// Certified sup of k and l over (0,P)x(0,1).
  double gain_bound(double P) const;
  double loss_bound(double P) const;
  /// K_rate = max of the two bounds.
  double bound(double P) const;

 private:
  RateKind kind_ = RateKind::constant;
  double k0_ = 0.0, alpha_ = 1.0, l0_ = 0.0, beta_ = 1.0;
  Coefficient k_, l_;
  double k_sup_ = 0.0, l_sup_ = 0.0;
};

/// V(u,p,r). Throws Error(domain) for u < 0, p outside [0,P] or r outside [0,1].
double eval_sorption(const RateModel& model, const GridSpec& grid, double u, double p, double r);

/// Interface velocities V(u, p_{j-1/2}, r_{i-1/2}), shape (J+1) x (I+2).
struct VelocityTable {
  Array2D values;
  double operator()(int j, int i) const { return values(j, i); }
};

/// Throws Error(model_validation) when a row is increasing in i.
VelocityTable interface_velocity_table(const RateModel& model, double u, const GridSpec& grid);

/// Coagulation kernel a(p,r;p',r').
///  - constant:   a = value
///  - separable:  a = value (p p')^gamma (r r')^delta, gamma, delta >= 0
///  - user:       callable, symmetric and nonnegative, with a declared sup bound
class KernelModel {
 public:
  using Function = std::function<double(double p, double r, double p2, double r2)>;

  static KernelModel constant(double value);
  static KernelModel separable(double value, double gamma, double delta);
  static KernelModel user(Function a, double sup_bound);

  KernelKind kind() const { return kind_; }
  double value() const { return value_; }
  double gamma() const { return gamma_; }
  double delta() const { return delta_; }

  double operator()(double p, double r, double p2, double r2) const;
  /// K_kernel, sup of a over the truncated domain.
  double bound(double P) const;

 private:
  KernelKind kind_ = KernelKind::constant;
  double value_ = 0.0, gamma_ = 0.0, delta_ = 0.0;
  Function fn_;
  double sup_ = 0.0;
};

/// Cell averages a_{j,i;j',i'}. Constant and separable kernels are stored
/// as scale * w_{j,i} * w_{j',i'}; user kernels as a dense symmetric table.
class KernelTable {
 public:
  KernelTable() = default;

  bool is_separable() const { return dense_.size() == 0; }
  bool is_zero() const { return is_separable() && scale_ == 0.0; }
  double scale() const { return scale_; }
  /// Per-cell factor of a separable table, shape (J+1) x (I+1).
  const Array2D& weights() const { return weights_; }

  double operator()(int j, int i, int j2, int i2) const {
    if (is_separable()) return scale_ * weights_(j, i) * weights_(j2, i2);
    return dense_(flat(j, i), flat(j2, i2));
  }

  double max_entry() const;

 private:
  friend KernelTable kernel_cell_average(const KernelModel&, const GridSpec&);
  std::size_t flat(int j, int i) const { return static_cast<std::size_t>(j) * r_cells_ + i; }

  int r_cells_ = 0;
  double scale_ = 0.0;
  Array2D weights_;
  Array2D dense_;
};

/// Cell-averaged kernel. Closed forms for constant and separable kernels;
/// tensor 2-point Gauss (16 nodes per cell pair) for user kernels.
/// Throws Error(kernel_validation) on a negative entry.
KernelTable kernel_cell_average(const KernelModel& kernel, const GridSpec& grid);

struct StabilityReport {
  double M_in = 0.0;         // initial zeroth moment
  double U_T = 0.0;          // bound on u over [0,T]
  double K_rate = 0.0;
  double K_kernel = 0.0;
  double V_sup = 0.0;        // sup |V| over u in {0,U_T} and all interface points
  double speed_sup = 0.0;    // sup |V_{j,i-1/2}| / p_j, the r-speed of column j
  double dt = 0.0;           // step being checked
  double dt_max_transport = 0.0;
  double dt_max_coag = 0.0;
  double dt_max = 0.0;
  bool transport_ok = false;
  bool coag_ok = false;

  bool ok() const { return transport_ok && coag_ok; }
  /// dt / dt_max_* ratios; a value below 1 satisfies the inequality.
  double transport_margin() const;
  double coag_margin() const;
};

struct StabilityOptions {
  /// Multiplies V_sup and speed_sup to cover extrema between sampled p-edges.
  double vsup_safety = 1.0;
};

/// Transport bound dr / (4 speed); +infinity when speed is zero.
double transport_dt_bound(double speed_sup, double dr);
/// Coagulation bound 1 / (2 K M_in (1+P)); +infinity when K M_in is zero.
double coag_dt_bound(double K_kernel, double M_in, double P);

StabilityReport stability_bounds(const RateModel& model, const KernelModel& kernel,
                                 const Field& f_in, double u_in, const TimeSpec& time,
                                 const GridSpec& grid, const StabilityOptions& options = {});

std::string format_report(const StabilityReport& report);

}  // namespace sorpcoag
