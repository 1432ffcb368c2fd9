#include "acs/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "acs/errors.hpp"
#include "acs/families.hpp"
#include "acs/moments.hpp"
#include "acs/states.hpp"

namespace acs {
namespace {

constexpr std::string_view kObservables[] = {"q",  "p",  "X",        "Y",
                                             "K1", "K2", "mandel_q", "schrodinger"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw DomainError("config: '" + std::string(key) + "' expects a number, got '" +
                      std::string(v) + "'");
  return x;
}

long parse_int(std::string_view key, std::string_view v) {
  long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw DomainError("config: '" + std::string(key) + "' expects an integer, got '" +
                      std::string(v) + "'");
  return x;
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

double* double_field(ScanConfig& c, std::string_view key) {
  static const std::map<std::string_view, double ScanConfig::*> fields = {
      {"lo", &ScanConfig::lo},         {"hi", &ScanConfig::hi},
      {"k", &ScanConfig::k},           {"z_re", &ScanConfig::z_re},
      {"z_im", &ScanConfig::z_im},     {"u_re", &ScanConfig::u_re},
      {"u_im", &ScanConfig::u_im},     {"v_re", &ScanConfig::v_re},
      {"v_im", &ScanConfig::v_im},     {"w_re", &ScanConfig::w_re},
      {"w_im", &ScanConfig::w_im},     {"v_sign", &ScanConfig::v_sign},
      {"z_dir_re", &ScanConfig::z_dir_re}, {"z_dir_im", &ScanConfig::z_dir_im},
      {"r", &ScanConfig::r},           {"theta", &ScanConfig::theta},
  };
  const auto it = fields.find(key);
  return it == fields.end() ? nullptr : &(c.*(it->second));
}

AcsParams fixed_params(const ScanConfig& c) {
  return AcsParams{{c.z_re, c.z_im}, {c.u_re, c.u_im}, {c.v_re, c.v_im}, {c.w_re, c.w_im},
                   c.repr()};
}

constexpr double kNoTolerance = std::numeric_limits<double>::infinity();

// Produces the state at each grid value, caching the squeeze unitary when it
// does not depend on the swept parameter.
class StateSource {
 public:
  explicit StateSource(const ScanConfig& c) : cfg_(c) {
    if (c.family == "squeezed_cat" && c.sweep == "d")
      squeezer_ = std::make_unique<Squeezer>(SqueezeParam::from_polar(c.r, c.theta), c.repr(),
                                             c.trunc);
  }

  StateVector operator()(double x) const {
    const ScanConfig& c = cfg_;
    if (c.family == "acs") {
      ScanConfig point = c;
      *double_field(point, c.sweep) = x;
      return solve_acs(fixed_params(point), c.trunc, kNoTolerance);
    }
    if (c.family == "w0_family") {
      const AcsParams p{{c.z_re, c.z_im}, std::sqrt(1.0 + x * x), c.v_sign * x, 0.0, c.repr()};
      return solve_acs(p, c.trunc, kNoTolerance);
    }
    const cplx z_dir(c.z_dir_re, c.z_dir_im);
    const bool even = c.flavor == Flavor::bosonic_even;
    if (c.sweep == "d") {
      const auto cat = subfamily(CatSpec{principal_sqrt(2.0 * z_dir * x), even}, c.trunc);
      return squeezer_->apply(cat, kNoTolerance);
    }
    const auto cat = subfamily(CatSpec{principal_sqrt(2.0 * z_dir), even}, c.trunc);
    return Squeezer(SqueezeParam::from_polar(x, c.theta), c.repr(), c.trunc)
        .apply(cat, kNoTolerance);
  }

 private:
  ScanConfig cfg_;
  std::unique_ptr<Squeezer> squeezer_;
};

double grid_value(double lo, double hi, int points, int i) {
  if (i == points - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

void ScanConfig::validate() const {
  static const std::map<std::string_view, std::vector<std::string_view>> sweeps = {
      {"acs", {"z_re", "z_im", "u_re", "u_im", "v_re", "v_im", "w_re", "w_im"}},
      {"w0_family", {"x"}},
      {"squeezed_cat", {"d", "r"}},
  };
  const auto fam = sweeps.find(family);
  if (fam == sweeps.end()) throw DomainError("config: unknown family '" + family + "'");
  if (std::find(fam->second.begin(), fam->second.end(), sweep) == fam->second.end())
    throw DomainError("config: family '" + family + "' cannot sweep '" + sweep + "'");
  if (!(lo < hi)) throw DomainError("config: need lo < hi");
  if (points < 2) throw DomainError("config: need points >= 2");
  if (trunc < 50) throw DomainError("config: need trunc >= 50");
  if (observables.empty()) throw DomainError("config: no observables");
  const ReprIndex rep = repr();
  for (const auto& o : observables) {
    if (std::find(std::begin(kObservables), std::end(kObservables), o) == std::end(kObservables))
      throw DomainError("config: unknown observable '" + o + "'");
    const bool photon = o == "q" || o == "p" || o == "X" || o == "Y" || o == "mandel_q";
    if (photon && !rep.bosonic())
      throw DomainError("config: observable '" + o + "' needs a bosonic flavor");
  }
  if (family != "acs" && !rep.bosonic())
    throw DomainError("config: family '" + family + "' needs a bosonic flavor");
  if (family == "w0_family" && flavor != Flavor::bosonic_even)
    throw DomainError("config: w0_family is defined on the even sector");
  if (family == "squeezed_cat" && !(r >= 0.0)) throw DomainError("config: need r >= 0");
}

void set_config_value(ScanConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "family") {
    c.family = value;
  } else if (key == "sweep") {
    c.sweep = value;
  } else if (key == "points") {
    c.points = static_cast<int>(parse_int(key, value));
  } else if (key == "trunc") {
    const long n = parse_int(key, value);
    if (n < 0) throw DomainError("config: trunc must be non-negative");
    c.trunc = static_cast<std::size_t>(n);
  } else if (key == "observables") {
    c.observables = split_list(value);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "flavor") {
    c.flavor = parse_flavor(value);
  } else if (double* f = double_field(c, key)) {
    *f = parse_double(key, value);
  } else {
    throw DomainError("config: unknown key '" + std::string(key) + "'");
  }
}

ScanConfig parse_scan_config(std::string_view text) {
  ScanConfig c;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
    set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  c.validate();
  return c;
}

ScanConfig load_scan_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scan_config(ss.str());
}

std::string serialize_scan_config(const ScanConfig& c) {
  std::ostringstream o;
  o << "family = " << c.family << '\n'
    << "sweep = " << c.sweep << '\n'
    << "lo = " << format_double(c.lo) << '\n'
    << "hi = " << format_double(c.hi) << '\n'
    << "points = " << c.points << '\n'
    << "observables = ";
  for (std::size_t i = 0; i < c.observables.size(); ++i) o << (i ? "," : "") << c.observables[i];
  o << '\n'
    << "trunc = " << c.trunc << '\n'
    << "out = " << c.out << '\n'
    << "flavor = " << to_string(c.flavor) << '\n';
  for (const char* key : {"k", "z_re", "z_im", "u_re", "u_im", "v_re", "v_im", "w_re", "w_im",
                          "v_sign", "z_dir_re", "z_dir_im", "r", "theta"}) {
    ScanConfig copy = c;
    o << key << " = " << format_double(*double_field(copy, key)) << '\n';
  }
  return o.str();
}

ScanTable run_scan(const ScanConfig& cfg, std::ostream& diag) {
  cfg.validate();
  const bool bosonic = cfg.repr().bosonic();
  ScanTable t;
  t.header.push_back(cfg.sweep);
  for (const auto& o : cfg.observables) {
    if (o == "q") t.header.push_back("var_q");
    else if (o == "p") t.header.push_back("var_p");
    else if (o == "X") t.header.push_back("var_X");
    else if (o == "Y") t.header.push_back("var_Y");
    else if (o == "K1") t.header.push_back("var_K1");
    else if (o == "K2") t.header.push_back("var_K2");
    else if (o == "mandel_q") t.header.push_back("mandel_q");
    else {
      t.header.push_back("schrodinger_lhs");
      t.header.push_back("schrodinger_rhs");
    }
  }
  if (bosonic)
    for (const char* f : {"q_sq", "p_sq", "x_sq", "y_sq"}) t.header.push_back(f);
  t.header.push_back("tail_norm");
  t.header.push_back("certified");

  const StateSource source(cfg);
  for (int i = 0; i < cfg.points; ++i) {
    const double x = grid_value(cfg.lo, cfg.hi, cfg.points, i);
    const StateVector psi = source(x);
    const MomentReport m = k_moments(psi);
    std::vector<std::string> row{format_double(x)};
    for (const auto& o : cfg.observables) {
      if (o == "q") row.push_back(format_double(m.bosonic->var_q));
      else if (o == "p") row.push_back(format_double(m.bosonic->var_p));
      else if (o == "X") row.push_back(format_double(m.bosonic->var_X));
      else if (o == "Y") row.push_back(format_double(m.bosonic->var_Y));
      else if (o == "K1") row.push_back(format_double(m.var_K1));
      else if (o == "K2") row.push_back(format_double(m.var_K2));
      else if (o == "mandel_q") row.push_back(m.mandel_q ? format_double(*m.mandel_q) : "");
      else {
        row.push_back(format_double(m.schrodinger_lhs));
        row.push_back(format_double(m.schrodinger_rhs));
      }
    }
    if (bosonic) {
      const auto f = squeeze_flags(*m.bosonic);
      for (bool b : {f.q_sq, f.p_sq, f.x_sq, f.y_sq}) row.push_back(flag(b));
    }
    const bool certified = psi.tail_norm() <= kTailThreshold;
    row.push_back(format_double(psi.tail_norm()));
    row.push_back(flag(certified));
    if (!certified) {
      ++t.uncertified;
      diag << "warning: " << cfg.sweep << " = " << format_double(x) << ": tail norm "
           << format_double(psi.tail_norm()) << " exceeds " << format_double(kTailThreshold)
           << " at N = " << cfg.trunc << '\n';
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(const ScanTable& table, std::ostream& out) {
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

ScanTable figure_table(std::string_view which) {
  ScanTable t;
  if (which == "fig1") {
    t.header = {"x", "var_p", "var_Y"};
    const W0Family fam;
    for (int i = 0; i < 251; ++i) {
      const double x = grid_value(0.0, 5.0, 251, i);
      const auto b = *k_moments(fam.state(x)).bosonic;
      t.rows.push_back({format_double(x), format_double(b.var_p), format_double(b.var_Y)});
    }
  } else if (which == "fig2") {
    t.header = {"d", "two_var_q", "var_X"};
    const SqueezedCatFamily fam(-1.0, SqueezeParam::from_polar(0.31, 0.0), 200);
    for (int i = 0; i < 241; ++i) {
      const double d = grid_value(0.0, 0.6, 241, i);
      const auto b = *k_moments(fam.state(d)).bosonic;
      t.rows.push_back({format_double(d), format_double(2.0 * b.var_q), format_double(b.var_X)});
    }
  } else {
    throw DomainError("figure: expected fig1 or fig2, got '" + std::string(which) + "'");
  }
  return t;
}

}  // namespace acs
