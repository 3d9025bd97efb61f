#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace btq {

// Finite field F_q, q = p^e <= 64. Elements are integer codes in [0, q):
// code = sum c_i p^i stands for sum c_i a^i, a a root of the modulus.
class Fq {
 public:
  static const Fq& get(int q);

  int q = 0, p = 0, e = 0;
  std::vector<int> modulus;  // monic over F_p, low degree first

  int add(int a, int b) const { return add_[a * q + b]; }
  int sub(int a, int b) const { return add_[a * q + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long long n) const;
  int frobenius(int a) const { return pow(a, p); }
  int from_int(long long n) const;
  std::vector<int> coords(int a) const;
  int generator() const { return gen_; }  // generator of the unit group
  bool is_square(int a) const;
  std::string str(int a) const;

 private:
  explicit Fq(int q);
  std::vector<int> add_, mul_, neg_, inv_;
  int gen_ = 1;
};

bool is_prime(long long n);

}  // namespace btq
