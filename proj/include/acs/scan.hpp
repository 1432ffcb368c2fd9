#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "acs/repr.hpp"

namespace acs {

/// One parameter sweep. Stored on disk as `key = value` lines; '#' starts a
/// comment. Keys:
///   family       acs | w0_family | squeezed_cat
///   sweep        acs: z_re z_im u_re u_im v_re v_im w_re w_im
///                w0_family: x
///                squeezed_cat: d (z = z_dir * d) or r (z = z_dir)
///   lo hi points grid, lo < hi, points >= 2
///   observables  comma list from q p X Y K1 K2 mandel_q schrodinger
///   trunc        largest ladder index N >= 50
///   out          CSV path, empty for stdout
///   flavor k     representation (k only read for flavor = abstract)
///   z_re ... w_im   fixed ACS parameters (family = acs)
///   v_sign       w0_family: v = v_sign * x, u = sqrt(1 + x^2), z = z_re + i z_im
///   z_dir_re z_dir_im r theta   squeezed_cat
struct ScanConfig {
  std::string family = "acs";
  std::string sweep = "z_re";
  double lo = 0.0;
  double hi = 1.0;
  int points = 11;
  std::vector<std::string> observables = {"q", "p", "X", "Y"};
  std::size_t trunc = 400;
  std::string out;

  Flavor flavor = Flavor::bosonic_even;
  double k = 0.25;
  double z_re = 0, z_im = 0, u_re = 1, u_im = 0, v_re = 0, v_im = 0, w_re = 0, w_im = 0;
  double v_sign = -1.0;
  double z_dir_re = -1.0, z_dir_im = 0.0;
  double r = 0.0, theta = 0.0;

  /// Throws DomainError on an unknown family, sweep or observable, lo >= hi,
  /// points < 2, trunc < 50, or photon observables on an abstract flavor.
  void validate() const;
  ReprIndex repr() const { return ReprIndex::make(flavor, k); }

  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

/// Applies one `key = value` assignment; unknown keys are a DomainError.
void set_config_value(ScanConfig& cfg, std::string_view key, std::string_view value);
ScanConfig parse_scan_config(std::string_view text);
ScanConfig load_scan_config(const std::string& path);
std::string serialize_scan_config(const ScanConfig& cfg);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

struct ScanTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int uncertified = 0;
};

/// Evaluates every grid point. Rows whose tail norm exceeds kTailThreshold are
/// kept with certified = 0 and reported on `diag`.
ScanTable run_scan(const ScanConfig& cfg, std::ostream& diag);

/// Comma separated, LF line endings, header first.
void write_csv(const ScanTable& table, std::ostream& out);

/// fig1: x, var_p, var_Y on 251 points of [0, 5] for |1, sqrt(1+x^2), -x; +>.
/// fig2: d, two_var_q, var_X on 241 points of [0, 0.6] for S(0.31)|alpha_+>, z = -d.
ScanTable figure_table(std::string_view which);

}  // namespace acs
