#ifndef HIWSIGN_TWIST_HPP
#define HIWSIGN_TWIST_HPP

#include <cstdint>

#include "hiwsign/arith.hpp"
#include "hiwsign/forms.hpp"
#include "hiwsign/rational.hpp"

namespace hiwsign {

/// The quadratic twist chi_1 = ((-1)^k N^2 t | .) attached to a squarefree
/// index t, and the combined character chi_{t,N} = chi * chi_1.
class TwistCharacters {
 public:
  TwistCharacters(std::int64_t t, int k, std::int64_t level, RealCharacter chi)
      : t_(t), k_(k), level_(level), chi_(std::move(chi)) {
    if (!is_squarefree(t)) throw Error(Errc::NotSquarefree, std::to_string(t) + " is not squarefree");
    discriminant_ = Integer(level) * level * t;
    if (k % 2 != 0) discriminant_ = -discriminant_;
  }

  TwistCharacters(const HalfIntegralForm& form, std::int64_t t)
      : TwistCharacters(t, form.k(), form.level(), form.descriptor().character) {}

  std::int64_t t() const noexcept { return t_; }
  int k() const noexcept { return k_; }
  std::int64_t level() const noexcept { return level_; }
  const Integer& discriminant() const noexcept { return discriminant_; }

  /// chi_1(m), assembled from its values at the prime factors of m.
  int chi1(std::int64_t m) const {
    if (m < 1) throw Error(Errc::OutOfRange, "chi1 needs m >= 1");
    int value = 1;
    for (auto [p, e] : factorize(m)) {
      const int at_p = kronecker(discriminant_, p);
      if (at_p == 0) return 0;
      if (e % 2 == 1) value *= at_p;
    }
    return value;
  }

  int chi_tN(std::int64_t m) const { return chi_(m) * chi1(m); }

 private:
  std::int64_t t_;
  int k_;
  std::int64_t level_;
  RealCharacter chi_;
  Integer discriminant_;
};

/// Free-function form of chi_1 for one-off evaluation.
inline int chi1(std::int64_t m, std::int64_t t, int k, std::int64_t level) {
  return TwistCharacters(t, k, level, RealCharacter::trivial(level)).chi1(m);
}

}  // namespace hiwsign

#endif  // HIWSIGN_TWIST_HPP
