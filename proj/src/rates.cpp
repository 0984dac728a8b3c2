#include "sorpcoag/rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "sorpcoag/diagnostics.hpp"
#include "sorpcoag/errors.hpp"
#include "sorpcoag/field.hpp"

namespace sorpcoag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::config, std::string(name) + " must be a nonnegative finite number");
  }
}

// Nodes of the 2-point Gauss rule on (a, b).
std::array<double, 2> gauss2(double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a) / std::sqrt(3.0);
  return {mid - half, mid + half};
}

// Mean of x^e over (a, b), e >= 0.
double power_mean(double a, double b, double e) {
  if (e == 0.0) return 1.0;
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / ((e + 1.0) * (b - a));
}

}  // namespace

const char* to_string(RateKind kind) {
  switch (kind) {
    case RateKind::langmuir: return "langmuir";
    case RateKind::section4: return "section4";
    case RateKind::constant: return "constant";
    case RateKind::user: return "user";
  }
  return "unknown";
}

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::constant: return "constant";
    case KernelKind::separable: return "separable";
    case KernelKind::user: return "user";
  }
  return "unknown";
}

RateModel RateModel::langmuir(double k0, double alpha, double l0, double beta) {
  require_nonnegative(k0, "rates.k0");
  require_nonnegative(alpha, "rates.alpha");
  require_nonnegative(l0, "rates.l0");
  require_nonnegative(beta, "rates.beta");
  RateModel m;
  m.kind_ = RateKind::langmuir;
  m.k0_ = k0;
  m.alpha_ = alpha;
  m.l0_ = l0;
  m.beta_ = beta;
  return m;
}

RateModel RateModel::section4() {
  RateModel m;
  m.kind_ = RateKind::section4;
  m.k0_ = 4.0;
  m.l0_ = 1.0;
  return m;
}

RateModel RateModel::constant(double k0, double l0) {
  require_nonnegative(k0, "rates.k0");
  require_nonnegative(l0, "rates.l0");
  RateModel m;
  m.kind_ = RateKind::constant;
  m.k0_ = k0;
  m.l0_ = l0;
  return m;
}

RateModel RateModel::user(Coefficient k, Coefficient l, double k_sup, double l_sup) {
  if (!k || !l) throw Error(ErrorKind::config, "user rate model needs both k and l");
  require_nonnegative(k_sup, "user rate bound on k");
  require_nonnegative(l_sup, "user rate bound on l");
  RateModel m;
  m.kind_ = RateKind::user;
  m.k_ = std::move(k);
  m.l_ = std::move(l);
  m.k_sup_ = k_sup;
  m.l_sup_ = l_sup;
  return m;
}

double RateModel::gain(double p, double r) const {
  switch (kind_) {
    case RateKind::langmuir: return k0_ * std::pow(p, alpha_) * std::pow(1.0 - r, alpha_);
    case RateKind::section4: return 4.0 * p * (1.0 - r);
    case RateKind::constant: return k0_;
    case RateKind::user: return k_(p, r);
  }
  return 0.0;
}

double RateModel::loss(double p, double r) const {
  switch (kind_) {
    case RateKind::langmuir: return l0_ * std::pow(p, beta_) * std::pow(r, beta_);
    case RateKind::section4: return r;
    case RateKind::constant: return l0_;
    case RateKind::user: return l_(p, r);
  }
  return 0.0;
}

double RateModel::velocity_dr(double u, double p, double r) const {
  switch (kind_) {
    case RateKind::langmuir: {
      const double dk = alpha_ == 0.0 ? 0.0
                                      : -alpha_ * k0_ * std::pow(p, alpha_) *
                                            std::pow(1.0 - r, alpha_ - 1.0);
      const double dl =
          beta_ == 0.0 ? 0.0 : beta_ * l0_ * std::pow(p, beta_) * std::pow(r, beta_ - 1.0);
      return dk * u - dl;
    }
    case RateKind::section4: return -4.0 * p * u - 1.0;
    case RateKind::constant: return 0.0;
    case RateKind::user: {
      const double h = 1e-6;
      const double lo = std::max(0.0, r - h);
      const double hi = std::min(1.0, r + h);
      return (velocity(u, p, hi) - velocity(u, p, lo)) / (hi - lo);
    }
  }
  return 0.0;
}

double RateModel::gain_bound(double P) const {
  switch (kind_) {
    case RateKind::langmuir: return k0_ * std::pow(P, alpha_);
    case RateKind::section4: return 4.0 * P;
    case RateKind::constant: return k0_;
    case RateKind::user: return k_sup_;
  }
  return 0.0;
}

double RateModel::loss_bound(double P) const {
  switch (kind_) {
    case RateKind::langmuir: return l0_ * std::pow(P, beta_);
    case RateKind::section4: return 1.0;
    case RateKind::constant: return l0_;
    case RateKind::user: return l_sup_;
  }
  return 0.0;
}

double RateModel::bound(double P) const { return std::max(gain_bound(P), loss_bound(P)); }

double eval_sorption(const RateModel& model, const GridSpec& grid, double u, double p,
                     double r) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw Error(ErrorKind::domain, "sorption: u must be >= 0");
  if (!(p >= 0.0 && p <= grid.P * (1.0 + 1e-12))) {
    throw Error(ErrorKind::domain, "sorption: p outside [0,P]");
  }
  if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorKind::domain, "sorption: r outside [0,1]");
  return model.velocity(u, p, r);
}

VelocityTable interface_velocity_table(const RateModel& model, double u, const GridSpec& grid) {
  VelocityTable table{Array2D(grid.p_cells(), grid.r_cells() + 1)};
  for (int j = 0; j <= grid.J; ++j) {
    const double p = grid.p_edge(j);
    auto row = table.values.row(j);
    double scale = 0.0;
    for (int i = 0; i <= grid.I + 1; ++i) {
      row[i] = eval_sorption(model, grid, u, p, grid.r_edge(i));
      scale = std::max(scale, std::abs(row[i]));
    }
    const double tol = 1e-13 * (scale + 1.0);
    for (int i = 1; i <= grid.I + 1; ++i) {
      if (row[i] > row[i - 1] + tol) {
        std::ostringstream msg;
        msg << "sorption rate increases in r at p = " << p << ", r = " << grid.r_edge(i)
            << " (u = " << u << ")";
        throw Error(ErrorKind::model_validation, msg.str());
      }
    }
  }
  return table;
}

KernelModel KernelModel::constant(double value) {
  require_nonnegative(value, "kernel.value");
  KernelModel k;
  k.kind_ = KernelKind::constant;
  k.value_ = value;
  return k;
}

KernelModel KernelModel::separable(double value, double gamma, double delta) {
  require_nonnegative(value, "kernel.value");
  require_nonnegative(gamma, "kernel.gamma");
  require_nonnegative(delta, "kernel.delta");
  KernelModel k;
  k.kind_ = KernelKind::separable;
  k.value_ = value;
  k.gamma_ = gamma;
  k.delta_ = delta;
  return k;
}

KernelModel KernelModel::user(Function a, double sup_bound) {
  if (!a) throw Error(ErrorKind::config, "user kernel needs a function");
  require_nonnegative(sup_bound, "user kernel bound");
  KernelModel k;
  k.kind_ = KernelKind::user;
  k.fn_ = std::move(a);
  k.sup_ = sup_bound;
  return k;
}

double KernelModel::operator()(double p, double r, double p2, double r2) const {
  switch (kind_) {
    case KernelKind::constant: return value_;
    case KernelKind::separable:
      return value_ * std::pow(p * p2, gamma_) * std::pow(r * r2, delta_);
    case KernelKind::user: return fn_(p, r, p2, r2);
  }
  return 0.0;
}

double KernelModel::bound(double P) const {
  switch (kind_) {
    case KernelKind::constant: return value_;
    case KernelKind::separable: return value_ * std::pow(P, 2.0 * gamma_);
    case KernelKind::user: return sup_;
  }
  return 0.0;
}

double KernelTable::max_entry() const {
  if (is_separable()) {
    double w = 0.0;
    for (double v : weights_.values()) w = std::max(w, v);
    return scale_ * w * w;
  }
  double m = 0.0;
  for (double v : dense_.values()) m = std::max(m, v);
  return m;
}

KernelTable kernel_cell_average(const KernelModel& kernel, const GridSpec& grid) {
  KernelTable table;
  table.r_cells_ = grid.r_cells();
  switch (kernel.kind()) {
    case KernelKind::constant:
      table.scale_ = kernel.value();
      table.weights_ = Array2D(grid.p_cells(), grid.r_cells(), 1.0);
      return table;
    case KernelKind::separable: {
      table.scale_ = kernel.value();
      table.weights_ = Array2D(grid.p_cells(), grid.r_cells());
      for (int j = 0; j <= grid.J; ++j) {
        const double wp = power_mean(grid.p_edge(j), grid.p_edge(j + 1), kernel.gamma());
        for (int i = 0; i <= grid.I; ++i) {
          table.weights_(j, i) = wp * power_mean(grid.r_edge(i), grid.r_edge(i + 1), kernel.delta());
        }
      }
      return table;
    }
    case KernelKind::user: break;
  }

  const auto cells = static_cast<std::size_t>(grid.cell_count());
  if (cells > 4096) {
    throw Error(ErrorKind::config, "user kernels are limited to grids of at most 4096 cells");
  }
  table.dense_ = Array2D(cells, cells);
  std::vector<std::array<double, 4>> np(cells), nr(cells);
  for (int j = 0; j <= grid.J; ++j) {
    const auto gp = gauss2(grid.p_edge(j), grid.p_edge(j + 1));
    for (int i = 0; i <= grid.I; ++i) {
      const auto gr = gauss2(grid.r_edge(i), grid.r_edge(i + 1));
      const std::size_t c = table.flat(j, i);
      np[c] = {gp[0], gp[0], gp[1], gp[1]};
      nr[c] = {gr[0], gr[1], gr[0], gr[1]};
    }
  }
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = a; b < cells; ++b) {
      double sum = 0.0;
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) sum += kernel(np[a][x], nr[a][x], np[b][y], nr[b][y]);
      const double avg = sum / 16.0;
      if (!(avg >= 0.0) || !std::isfinite(avg)) {
        throw Error(ErrorKind::kernel_validation, "kernel cell average is negative or not finite");
      }
      table.dense_(a, b) = avg;
      table.dense_(b, a) = avg;
    }
  }
  return table;
}

double StabilityReport::transport_margin() const {
  return dt_max_transport == kInf ? 0.0 : dt / dt_max_transport;
}

double StabilityReport::coag_margin() const {
  return dt_max_coag == kInf ? 0.0 : dt / dt_max_coag;
}

double transport_dt_bound(double speed_sup, double dr) {
  return speed_sup > 0.0 ? dr / (4.0 * speed_sup) : kInf;
}

double coag_dt_bound(double K_kernel, double M_in, double P) {
  const double denom = 2.0 * K_kernel * M_in * (1.0 + P);
  return denom > 0.0 ? 1.0 / denom : kInf;
}

StabilityReport stability_bounds(const RateModel& model, const KernelModel& kernel,
                                 const Field& f_in, double u_in, const TimeSpec& time,
                                 const GridSpec& grid, const StabilityOptions& options) {
  StabilityReport rep;
  rep.M_in = moments(f_in, grid).M0;
  rep.K_rate = model.bound(grid.P);
  rep.K_kernel = kernel.bound(grid.P);
  // Desorption can raise u by at most dt * sup(l) * M0 per step, and M0 never
  // exceeds M_in.
  rep.U_T = u_in + model.loss_bound(grid.P) * rep.M_in * time.T;

  double v_sup = 0.0;
  double speed = 0.0;
  for (double u : {0.0, rep.U_T}) {
    for (int j = 0; j <= grid.J; ++j) {
      const double p = grid.p_edge(j);
      double col = 0.0;
      for (int i = 0; i <= grid.I + 1; ++i) {
        col = std::max(col, std::abs(model.velocity(u, p, grid.r_edge(i))));
      }
      v_sup = std::max(v_sup, col);
      speed = std::max(speed, col / grid.p_center(j));
    }
  }
  rep.V_sup = options.vsup_safety * v_sup;
  rep.speed_sup = options.vsup_safety * speed;
  rep.dt = time.dt;
  rep.dt_max_transport = transport_dt_bound(rep.speed_sup, grid.dr);
  rep.dt_max_coag = coag_dt_bound(rep.K_kernel, rep.M_in, grid.P);
  rep.dt_max = std::min(rep.dt_max_transport, rep.dt_max_coag);
  rep.transport_ok = rep.dt < rep.dt_max_transport;
  rep.coag_ok = rep.dt < rep.dt_max_coag;
  return rep;
}

std::string format_report(const StabilityReport& r) {
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "M_in              = " << num(r.M_in) << "\n"
      << "U_T               = " << num(r.U_T) << "\n"
      << "K_rate            = " << num(r.K_rate) << "\n"
      << "K_kernel          = " << num(r.K_kernel) << "\n"
      << "V_sup             = " << num(r.V_sup) << "\n"
      << "speed_sup         = " << num(r.speed_sup) << "\n"
      << "dt                = " << num(r.dt) << "\n"
      << "dt_max_transport  = " << num(r.dt_max_transport) << "  (4 dt speed_sup / dr < 1)\n"
      << "dt_max_coag       = " << num(r.dt_max_coag) << "  (2 K M_in (1+P) dt < 1)\n"
      << "dt_max            = " << num(r.dt_max) << "\n"
      << "transport margin  = " << num(r.transport_margin()) << "  "
      << (r.transport_ok ? "ok" : "VIOLATED") << "\n"
      << "coag margin       = " << num(r.coag_margin()) << "  " << (r.coag_ok ? "ok" : "VIOLATED")
      << "\n"
      << "verdict           = " << (r.ok() ? "stable" : "unstable") << "\n";
  return out.str();
}

}  // namespace sorpcoag
