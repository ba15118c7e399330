#pragma once

namespace georate {

/// A probability in [0, 1]; construction rejects anything else.
class Probability {
 public:
  explicit Probability(double value);
  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_;
};

/// Binary entropy H(x) in bits, with H(0) = H(1) = 0.
double binary_entropy(Probability x);

/// Entropy in bits of the three-point law (delta/2, 1 - delta, delta/2).
double ternary_entropy(Probability delta);

/// max(x, 0): rate bounds below zero carry no information.
double clamp_nonneg(double bits);

/// -p log2 p with the 0 log 0 = 0 convention.
double neg_p_log2_p(double p);

}  // namespace georate
