#ifndef TYPESEM_EXTNAT_HPP
#define TYPESEM_EXTNAT_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace typesem {

/// Extended natural number: a nonnegative integer or infinity.
/// Addition is commutative, associative, and infinity-absorbing.
/// The order is total with 0 <= n < infinity for every finite n.
class ExtNat {
public:
  ExtNat() : inf_(false), n_(0) {}
  ExtNat(std::uint64_t n) : inf_(false), n_(n) {}

  static ExtNat infinity() {
    ExtNat e;
    e.inf_ = true;
    return e;
  }

  bool is_finite() const { return !inf_; }
  bool is_infinite() const { return inf_; }

  std::uint64_t finite_value() const {
    if (inf_)
      throw std::logic_error("ExtNat: finite_value() on infinity");
    return n_;
  }

  ExtNat &operator+=(const ExtNat &o) {
    if (inf_ || o.inf_) {
      inf_ = true;
      n_ = 0;
    } else {
      n_ += o.n_;
    }
    return *this;
  }

  friend ExtNat operator+(ExtNat a, const ExtNat &b) {
    a += b;
    return a;
  }

  /// Scalar multiple k*x, with 0*infinity = 0.
  friend ExtNat operator*(std::uint64_t k, const ExtNat &x) {
    if (k == 0)
      return ExtNat(0);
    if (x.inf_)
      return infinity();
    return ExtNat(k * x.n_);
  }

  /// Truncated subtraction a - b for b <= a; infinity - finite = infinity.
  /// infinity - infinity is rejected (never needed by callers).
  friend ExtNat saturating_sub(const ExtNat &a, const ExtNat &b) {
    if (b.inf_) {
      if (!a.inf_)
        throw std::logic_error("ExtNat: subtracting infinity from a finite value");
      throw std::logic_error("ExtNat: infinity - infinity is undefined");
    }
    if (a.inf_)
      return infinity();
    return ExtNat(a.n_ >= b.n_ ? a.n_ - b.n_ : 0);
  }

  friend bool operator==(const ExtNat &a, const ExtNat &b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.n_ == b.n_);
  }
  friend bool operator!=(const ExtNat &a, const ExtNat &b) { return !(a == b); }
  friend bool operator<(const ExtNat &a, const ExtNat &b) {
    if (a.inf_)
      return false;
    if (b.inf_)
      return true;
    return a.n_ < b.n_;
  }
  friend bool operator<=(const ExtNat &a, const ExtNat &b) { return a == b || a < b; }
  friend bool operator>(const ExtNat &a, const ExtNat &b) { return b < a; }
  friend bool operator>=(const ExtNat &a, const ExtNat &b) { return b <= a; }

  friend ExtNat min(const ExtNat &a, const ExtNat &b) { return a <= b ? a : b; }
  friend ExtNat max(const ExtNat &a, const ExtNat &b) { return a <= b ? b : a; }

  std::string to_string() const { return inf_ ? "inf" : std::to_string(n_); }

  friend std::ostream &operator<<(std::ostream &os, const ExtNat &e) {
    return os << e.to_string();
  }

private:
  bool inf_;
  std::uint64_t n_;
};

} // namespace typesem

#endif // TYPESEM_EXTNAT_HPP
