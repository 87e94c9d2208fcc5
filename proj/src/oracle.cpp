#include "thirring/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace thirring {

namespace {
constexpr double kPi = std::numbers::pi;

void check_even(int n_sites) {
  if (n_sites <= 0 || n_sites % 2 != 0) {
    throw std::invalid_argument("n_sites must be positive and even");
  }
}

// sqrt((m + w_k)/w_k) weights and v_k over the grid; throws on a massless
// zero mode (w = 0), which the kernel picture cannot represent
struct GridWeights {
  std::vector<double> sqrt_ratio;
  std::vector<double> v;
  std::vector<double> w;
};

GridWeights grid_weights(const MomentumGrid& grid, double m) {
  GridWeights gw;
  gw.sqrt_ratio.reserve(grid.size());
  gw.v.reserve(grid.size());
  gw.w.reserve(grid.size());
  for (double k : grid.k) {
    const Dispersion d = dispersion(k, m);
    if (d.w <= 0.0) {
      throw std::domain_error("degenerate massless zero mode at k = " +
                              std::to_string(k));
    }
    gw.sqrt_ratio.push_back(std::sqrt((m + d.w) / d.w));
    gw.v.push_back(d.v);
    gw.w.push_back(d.w);
  }
  return gw;
}

}  // namespace

MomentumGrid MomentumGrid::make(int n_sites) {
  check_even(n_sites);
  MomentumGrid g;
  g.n_sites = n_sites;
  const int j_lo = -(n_sites / 4);                     // -floor(N/4)
  const int j_hi = (n_sites + 3) / 4 - 1;              // ceil(N/4) - 1
  for (int j = j_lo; j <= j_hi; ++j) {
    g.k.push_back(2.0 * kPi * j / n_sites);
  }
  if (g.size() != n_sites / 2) {
    throw std::logic_error("momentum grid size mismatch");
  }
  return g;
}

Dispersion dispersion(double k, double m) {
  if (m < 0.0) throw std::domain_error("mass must be non-negative");
  Dispersion d;
  const double s = std::sin(k);
  d.w = std::sqrt(m * m + s * s);
  if (m + d.w == 0.0) {
    d.v = 0.0;
    d.degenerate = true;
  } else {
    d.v = s / (m + d.w);
  }
  return d;
}

DensityKernels density_kernels(int site, double m, int n_sites) {
  check_even(n_sites);
  if (site < 0 || site >= n_sites) throw std::out_of_range("site");
  const MomentumGrid grid = MomentumGrid::make(n_sites);
  const GridWeights gw = grid_weights(grid, m);
  const int nk = grid.size();

  DensityKernels out;
  out.c_kernel.resize(nk, nk);
  out.d_kernel.resize(nk, nk);
  const bool even = (site % 2 == 0);
  for (int p = 0; p < nk; ++p) {
    for (int q = 0; q < nk; ++q) {
      const cd phase = std::exp(cd(0.0, -(grid.k[p] - grid.k[q]) * site));
      const double base = gw.sqrt_ratio[p] * gw.sqrt_ratio[q] / n_sites;
      if (even) {
        out.c_kernel(p, q) = base * phase;
        out.d_kernel(p, q) = -base * gw.v[p] * gw.v[q] * phase;
      } else {
        out.c_kernel(p, q) = base * gw.v[p] * gw.v[q] * phase;
        out.d_kernel(p, q) = -base * phase;
      }
    }
  }
  double ce = 0.0, co = 0.0;
  for (int p = 0; p < nk; ++p) {
    const double ratio = (m + gw.w[p]) / gw.w[p];
    ce += ratio * gw.v[p] * gw.v[p];
    co += ratio;
  }
  out.c_even = ce / n_sites;
  out.c_odd = co / n_sites;
  out.vacuum_constant = even ? out.c_even : out.c_odd;
  return out;
}

void oracle_evolve(Eigen::VectorXcd& packet_c, Eigen::VectorXcd& packet_d,
                   double m, double t) {
  const int nk = static_cast<int>(packet_c.size());
  if (packet_d.size() != nk) throw std::invalid_argument("packet size mismatch");
  const MomentumGrid grid = MomentumGrid::make(2 * nk);
  for (int i = 0; i < nk; ++i) {
    const double w = dispersion(grid.k[i], m).w;
    const cd phase = std::exp(cd(0.0, -w * t));
    packet_c[i] *= phase;
    packet_d[i] *= phase;
  }
}

double oracle_delta_density(const OraclePackets& packets, double m,
                            int n_sites, int site) {
  check_even(n_sites);
  if (site < 0 || site >= n_sites) throw std::out_of_range("site");
  const MomentumGrid grid = MomentumGrid::make(n_sites);
  const GridWeights gw = grid_weights(grid, m);
  const int nk = grid.size();
  const bool even = (site % 2 == 0);

  double value = 0.0;
  if (packets.phi_c) {
    cd acc = 0.0;
    for (int q = 0; q < nk; ++q) {
      const double weight = even ? gw.sqrt_ratio[q] : gw.sqrt_ratio[q] * gw.v[q];
      acc += weight * std::exp(cd(0.0, grid.k[q] * site)) * (*packets.phi_c)[q];
    }
    value += std::norm(acc) / n_sites;
  }
  if (packets.phi_d) {
    cd acc = 0.0;
    for (int q = 0; q < nk; ++q) {
      const double weight = even ? gw.sqrt_ratio[q] * gw.v[q] : gw.sqrt_ratio[q];
      acc += weight * std::exp(cd(0.0, grid.k[q] * site)) * (*packets.phi_d)[q];
    }
    value -= std::norm(acc) / n_sites;
  }
  return value;
}

ObservableSeries oracle_density_series(const OraclePackets& packets, double m,
                                       int n_sites,
                                       const std::vector<double>& times,
                                       int threads) {
  check_even(n_sites);
  ObservableSeries series;
  series.kind = SeriesKind::delta_density;
  series.times = times;
  series.values.resize(static_cast<int>(times.size()), n_sites);

  auto run_slice = [&](int ti) {
    OraclePackets evolved = packets;
    Eigen::VectorXcd dummy;
    if (evolved.phi_c && evolved.phi_d) {
      oracle_evolve(*evolved.phi_c, *evolved.phi_d, m, times[ti]);
    } else if (evolved.phi_c) {
      Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(evolved.phi_c->size());
      oracle_evolve(*evolved.phi_c, zero, m, times[ti]);
    } else if (evolved.phi_d) {
      Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(evolved.phi_d->size());
      oracle_evolve(zero, *evolved.phi_d, m, times[ti]);
    }
    for (int n = 0; n < n_sites; ++n) {
      series.values(ti, n) = oracle_delta_density(evolved, m, n_sites, n);
    }
  };

  const int nt = static_cast<int>(times.size());
  if (threads <= 1 || nt < 2) {
    for (int ti = 0; ti < nt; ++ti) run_slice(ti);
  } else {
    std::vector<std::thread> pool;
    const int workers = std::min(threads, nt);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int ti = w; ti < nt; ti += workers) run_slice(ti);
      });
    }
    for (auto& th : pool) th.join();
  }
  return series;
}

std::string ObservableSeries::density_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t,site,delta_density\n";
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    for (int n = 0; n < values.cols(); ++n) {
      out << times[ti] << ',' << n << ',' << values(int(ti), n) << '\n';
    }
  }
  return out.str();
}

std::string entropy_csv(const ObservableSeries& s1, const ObservableSeries& s2) {
  if (s1.times.size() != s2.times.size() || s1.values.cols() != s2.values.cols()) {
    throw std::invalid_argument("entropy series shape mismatch");
  }
  std::ostringstream out;
  out.precision(17);
  out << "t,cut,S1,S2\n";
  for (std::size_t ti = 0; ti < s1.times.size(); ++ti) {
    for (int c = 0; c < s1.values.cols(); ++c) {
      out << s1.times[ti] << ',' << (c + 1) << ',' << s1.values(int(ti), c)
          << ',' << s2.values(int(ti), c) << '\n';
    }
  }
  return out.str();
}

}  // namespace thirring
