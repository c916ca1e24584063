#include "holomnum/float.hpp"

#include <cstdio>
#include <vector>

namespace holomnum {

Float::Float(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Float::Float(const Float& other) {
    mpfr_init2(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

Float& Float::operator=(const Float& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.prec());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Float& Float::operator=(Float&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Float::~Float() { mpfr_clear(v_); }

std::string Float::to_string(int digits, mpfr_rnd_t rnd) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dR%ce", digits > 0 ? digits - 1 : 0,
                  rnd == MPFR_RNDU ? 'U' : rnd == MPFR_RNDD ? 'D' : 'N');
    int n = mpfr_snprintf(nullptr, 0, fmt, v_);
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

}  // namespace holomnum
