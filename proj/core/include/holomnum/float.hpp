#pragma once

#include <mpfr.h>

#include <string>

namespace holomnum {

/// Precision, in bits, of ball radii.
inline constexpr mpfr_prec_t kMagPrec = 32;

/// RAII owner of an mpfr_t. Value-semantic: copies carry the precision of the source.
class Float {
public:
    explicit Float(mpfr_prec_t prec = 53);
    Float(const Float& other);
    Float(Float&& other) noexcept;
    Float& operator=(const Float& other);
    Float& operator=(Float&& other) noexcept;
    ~Float();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    /// Changes precision, rounding the current value to nearest.
    void set_prec_round(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Decimal rendering with `digits` significant digits.
    std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

private:
    mpfr_t v_;
};

}  // namespace holomnum
