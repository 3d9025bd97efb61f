#include "btq/fq.h"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace btq {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Conway polynomials, low degree first, without the leading 1.
std::vector<int> conway(int p, int e) {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1}},       {{2, 3}, {1, 1, 0}},       {{2, 4}, {1, 1, 0, 0}},
      {{2, 5}, {1, 0, 1, 0, 0}}, {{2, 6}, {1, 1, 0, 1, 1, 0}}, {{3, 2}, {2, 2}},
      {{3, 3}, {1, 2, 0}},    {{5, 2}, {2, 4}},          {{7, 2}, {3, 6}},
  };
  auto it = table.find({p, e});
  if (it == table.end()) throw std::invalid_argument("no modulus table entry for this field size");
  return it->second;
}

}  // namespace

Fq::Fq(int qq) : q(qq) {
  if (q < 2 || q > 64) throw std::invalid_argument("field size must be in [2, 64]");
  for (int cand = 2; cand <= q; ++cand) {
    if (!is_prime(cand)) continue;
    int t = q, k = 0;
    while (t % cand == 0) t /= cand, ++k;
    if (t == 1 && k > 0) { p = cand; e = k; break; }
  }
  if (p == 0) throw std::invalid_argument("field size must be a prime power");
  if (e > 1) {
    modulus = conway(p, e);
    modulus.push_back(1);
  } else {
    modulus = {0, 1};
  }
  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  auto digits = [&](int a) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) d[i] = a % p, a /= p;
    return d;
  };
  auto code = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = e - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };
  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    std::vector<int> dn(e);
    for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = code(dn);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      std::vector<int> s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = code(s);
      // schoolbook product then reduce by the modulus
      std::vector<int> pr(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) pr[i + j] = (pr[i + j] + da[i] * db[j]) % p;
      for (int k = 2 * e - 1; k >= e; --k) {
        int c = pr[k];
        if (!c) continue;
        for (int i = 0; i <= e; ++i) pr[k - e + i] = ((pr[k - e + i] - c * modulus[i]) % p + p) % p;
      }
      pr.resize(e);
      mul_[a * q + b] = code(pr);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = b;
  for (int g = 1; g < q; ++g) {
    int x = g, ord = 1;
    while (x != 1) x = mul(x, g), ++ord;
    if (ord == q - 1) { gen_ = g; break; }
  }
}

const Fq& Fq::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Fq>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[q];
  if (!slot) slot.reset(new Fq(q));
  return *slot;
}

int Fq::inv(int a) const {
  if (a == 0) throw std::domain_error("division by zero in finite field");
  return inv_[a];
}

int Fq::pow(int a, long long n) const {
  if (n < 0) { a = inv(a); n = -n; }
  int r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

int Fq::from_int(long long n) const {
  long long r = ((n % p) + p) % p;
  return static_cast<int>(r);
}

std::vector<int> Fq::coords(int a) const {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) d[i] = a % p, a /= p;
  return d;
}

bool Fq::is_square(int a) const {
  if (a == 0 || p == 2) return true;
  return pow(a, (q - 1) / 2) == 1;
}

std::string Fq::str(int a) const {
  if (e == 1) return std::to_string(a);
  std::string s;
  auto d = coords(a);
  for (int i = e - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!s.empty()) s += "+";
    std::string coef = d[i] == 1 && i > 0 ? "" : std::to_string(d[i]);
    s += coef + (i == 0 ? "" : i == 1 ? "a" : "a^" + std::to_string(i));
  }
  return s.empty() ? "0" : s;
}

}  // namespace btq
