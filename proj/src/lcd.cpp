#include "rootsim/lcd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rootsim/errors.hpp"

namespace rootsim {

namespace {

constexpr std::uint64_t kFactorCap = 1'000'000'000'000ULL;
constexpr std::size_t kMinGrid = 64;

struct PrimePower {
  std::uint64_t p;
  unsigned e;
};

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

void check_range(std::uint64_t n, const char* what) {
  if (n < 1 || n > kFactorCap) throw DomainError(std::string(what) + ": argument must be in [1, 10^12]");
}

std::vector<double> t_grid(double t_min, double t_max, std::size_t n_t) {
  std::vector<double> t(n_t);
  const double ratio = std::log(t_max / t_min);
  for (std::size_t i = 0; i < n_t; ++i)
    t[i] = t_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n_t - 1));
  t.back() = t_max;
  return t;
}

void check_lcd_params(double L, double t_min, double t_max, std::size_t n_t, std::size_t n_alpha) {
  if (!(L > 0.0)) throw DomainError("lcd_search: L must be positive");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("lcd_search: need 0 < t_min < t_max");
  if (n_t < kMinGrid || n_alpha < kMinGrid) throw DomainError("lcd_search: grids must have >= 64 points");
}

struct RowResult {
  double min_ratio = std::numeric_limits<double>::infinity();
  bool violation = false;
};

// One radius of the polar scan.
RowResult scan_radius(const VkMatrix& v, double L, double t, std::size_t n_alpha,
                      std::vector<double>& buf) {
  RowResult r;
  for (std::size_t i = 0; i < n_alpha; ++i) {
    const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_alpha);
    v.apply_transpose({t * std::cos(a), t * std::sin(a)}, buf);
    double nsq = 0.0;
    for (double x : buf) nsq += x * x;
    const double lp = log_plus(std::sqrt(nsq) / L);
    if (lp == 0.0) continue;
    const double ratio = dist_to_lattice(buf) / (L * std::sqrt(lp));
    r.min_ratio = std::min(r.min_ratio, ratio);
    if (ratio < 1.0) r.violation = true;
  }
  return r;
}

LcdCertificate make_cert(const VkMatrix& v, double L, double t_min, double t_max,
                         std::size_t n_t, std::size_t n_alpha) {
  LcdCertificate c;
  c.n = v.n();
  c.k = v.k();
  c.L = L;
  c.t_min = t_min;
  c.t_max = t_max;
  c.n_t = n_t;
  c.n_alpha = n_alpha;
  return c;
}

}  // namespace

VkMatrix::VkMatrix(std::size_t n, std::size_t k) : n_(n), k_(k), cos_(n), sin_(n) {
  if (n < 2 || k >= n) throw DomainError("vk: need n >= 2 and 0 <= k < n");
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = (k * j) % n;
    if ((4 * r) % n == 0) {
      // Quarter turns are exact, so integer images stay integer.
      static constexpr double c4[] = {1.0, 0.0, -1.0, 0.0};
      const std::size_t q = 4 * r / n;
      cos_[j] = c4[q];
      sin_[j] = c4[(q + 3) % 4];
      continue;
    }
    const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    cos_[j] = std::cos(a);
    sin_[j] = std::sin(a);
  }
}

std::array<double, 2> VkMatrix::apply(std::span<const double> x) const {
  if (x.size() != n_) throw InputError("VkMatrix::apply: dimension mismatch");
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    re += cos_[j] * x[j];
    im += sin_[j] * x[j];
  }
  return {re, im};
}

void VkMatrix::apply_transpose(std::array<double, 2> theta, std::span<double> out) const {
  for (std::size_t j = 0; j < n_; ++j) out[j] = cos_[j] * theta[0] + sin_[j] * theta[1];
}

std::vector<double> VkMatrix::apply_transpose(std::array<double, 2> theta) const {
  std::vector<double> out(n_);
  apply_transpose(theta, out);
  return out;
}

double VkMatrix::column_norm(std::size_t j) const noexcept {
  return std::hypot(cos_[j], sin_[j]);
}

double dist_to_lattice(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) {
    const double d = x - std::nearbyint(x);
    s += d * d;
  }
  return std::sqrt(s);
}

bool lcd_violates(const VkMatrix& v, double L, std::array<double, 2> theta) {
  const auto img = v.apply_transpose(theta);
  double nsq = 0.0;
  for (double x : img) nsq += x * x;
  return dist_to_lattice(img) < L * std::sqrt(log_plus(std::sqrt(nsq) / L));
}

std::string LcdCertificate::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"n\":" << n << ",\"k\":" << k << ",\"L\":" << L << ",\"t_range\":[" << t_min << ","
     << t_max << "],\"grid\":[" << n_t << "," << n_alpha << "],\"min_ratio\":";
  if (std::isfinite(min_ratio))
    os << min_ratio;
  else
    os << "null";
  os << ",\"certified_lower_bound\":" << certified_lower_bound << "}";
  return os.str();
}

LcdCertificate lcd_search_serial(const VkMatrix& v, double L, double t_min, double t_max,
                                 std::size_t n_t, std::size_t n_alpha) {
  check_lcd_params(L, t_min, t_max, n_t, n_alpha);
  auto cert = make_cert(v, L, t_min, t_max, n_t, n_alpha);
  const auto ts = t_grid(t_min, t_max, n_t);
  std::vector<double> buf(v.n());
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t first = n_t;
  for (std::size_t i = 0; i < n_t; ++i) {
    const auto r = scan_radius(v, L, ts[i], n_alpha, buf);
    min_ratio = std::min(min_ratio, r.min_ratio);
    if (r.violation && first == n_t) first = i;
  }
  cert.min_ratio = min_ratio;
  cert.violation_found = first < n_t;
  cert.certified_lower_bound = cert.violation_found ? ts[first] : t_max;
  return cert;
}

LcdCertificate lcd_search(const VkMatrix& v, double L, double t_min, double t_max,
                          std::size_t n_t, std::size_t n_alpha) {
  check_lcd_params(L, t_min, t_max, n_t, n_alpha);
  auto cert = make_cert(v, L, t_min, t_max, n_t, n_alpha);
  const auto ts = t_grid(t_min, t_max, n_t);
  double min_ratio = std::numeric_limits<double>::infinity();
  long first = static_cast<long>(n_t);
  const long count = static_cast<long>(n_t);

#pragma omp parallel
  {
    std::vector<double> buf(v.n());
    double local_min = std::numeric_limits<double>::infinity();
    long local_first = count;
#pragma omp for schedule(dynamic, 8) nowait
    for (long i = 0; i < count; ++i) {
      const auto r = scan_radius(v, L, ts[i], n_alpha, buf);
      local_min = std::min(local_min, r.min_ratio);
      if (r.violation) local_first = std::min(local_first, i);
    }
#pragma omp critical(rootsim_lcd_reduce)
    {
      min_ratio = std::min(min_ratio, local_min);
      first = std::min(first, local_first);
    }
  }
  cert.min_ratio = min_ratio;
  cert.violation_found = first < count;
  cert.certified_lower_bound = cert.violation_found ? ts[first] : t_max;
  return cert;
}

std::uint64_t totient(std::uint64_t n) {
  check_range(n, "totient");
  std::uint64_t result = n;
  for (const auto& [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

std::uint64_t divisor_count(std::uint64_t m) {
  check_range(m, "divisor_count");
  std::uint64_t count = 1;
  for (const auto& [p, e] : factorize(m)) count *= e + 1;
  return count;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  check_range(n, "divisors");
  std::vector<std::uint64_t> d{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = d.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) d.push_back(d[j] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::map<std::uint64_t, std::uint64_t> gcd_class_counts(std::uint64_t n) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (auto d : divisors(n)) counts[d] = totient(n / d);
  return counts;
}

GcdThresholdCount gcd_threshold_count(std::uint64_t n, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("gcd_threshold_count: nu must lie in (0, 1)");
  check_range(n, "gcd_threshold_count");
  const double threshold = std::pow(static_cast<double>(n), nu);
  const auto floor_t = static_cast<std::uint64_t>(std::floor(threshold));
  GcdThresholdCount out;
  for (const auto& [d, cnt] : gcd_class_counts(n)) {
    if (static_cast<double>(d) > threshold) out.exact += cnt;
    if (d >= floor_t) out.divisor_sum_bound += cnt;
  }
  return out;
}

}  // namespace rootsim
