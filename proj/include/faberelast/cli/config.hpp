#pragma once

#include <optional>
#include <string>

#include "faberelast/conformal_map.hpp"
#include "faberelast/field_eval.hpp"
#include "faberelast/loading.hpp"

namespace faberelast::cli {

/// Job description read from a flat `key = value` file. Complex lists are written
/// as `re,im; re,im; ...`; `#` starts a comment.
///
///   map    = 0,0; 0.1,0.1        # a_0 .. a_M
///   alpha1 = 0.5                 # either alpha1 + kappa or lambda + mu
///   kappa  = 0.3
///   A      = 0,0; 1,0            # A_0 .. A_p
///   B      = 0,0; 1,0            # B_0 .. B_q
///   N      = 48
///   Q      = 2048
///   grid   = -3,3,-3,3,201,201   # xmin,xmax,ymin,ymax,nx,ny
///   output = out/order1
struct JobConfig {
  std::vector<cplx> map;
  std::optional<double> lambda, mu, alpha1, kappa;
  CVector A, B;
  int truncation_N = 48;
  int quadrature_Q = 2048;
  std::optional<GridSpec> grid;
  std::string output_path;

  ExteriorMap exterior_map() const;
  Material material() const;
  FarFieldLoading loading() const;
  /// ConfigError unless exactly one material form is present, N >= max(p, q, M) + 2,
  /// Q is a power of two >= 64 and the grid resolution is at least 2 x 2.
  void check() const;
};

/// ConfigError on any syntax error, unknown or repeated key.
JobConfig parse_config_text(const std::string& text);
JobConfig parse_config_file(const std::string& path);

}  // namespace faberelast::cli
