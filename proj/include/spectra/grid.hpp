#pragma once

namespace spectra {

// Uniform grid x_i = x_min + i h, i = 0 .. n_points - 1.
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  int n_points = 2001;

  static Grid symmetric(double half_width, int n_points) {
    return Grid{-half_width, half_width, n_points};
  }

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + i * spacing(); }

  // Same interval, spacing halved (2N - 1 points, every old node kept).
  Grid refined() const { return Grid{x_min, x_max, 2 * n_points - 1}; }

  // Throws Error{invalid_argument} unless x_max > x_min and n_points >= 3.
  void validate() const;
};

}  // namespace spectra
