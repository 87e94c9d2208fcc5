#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace thirring {

enum class SeriesKind { delta_density, s1, s2 };

/// Time-resolved per-site (or per-cut) observable values.
/// Density columns are sites 0..N-1; entropy columns are cuts 1..N-1.
struct ObservableSeries {
  SeriesKind kind = SeriesKind::delta_density;
  std::vector<double> times;
  Eigen::MatrixXd values;  // row = time index, col = site or cut-1

  int column_label(int col) const {
    return kind == SeriesKind::delta_density ? col : col + 1;
  }

  // columns: t, site, delta_density
  std::string density_csv() const;
};

// columns: t, cut, S1, S2
std::string entropy_csv(const ObservableSeries& s1, const ObservableSeries& s2);

}  // namespace thirring
