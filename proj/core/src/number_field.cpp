#include "holomnum/number_field.hpp"

#include <sstream>

#include "holomnum/error.hpp"

namespace holomnum {

namespace {

using QVec = std::vector<mpq_class>;

void qtrim(QVec& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b (b nonzero, trimmed).
void qdivrem(QVec a, const QVec& b, QVec& q, QVec& r) {
    qtrim(a);
    if (a.size() < b.size()) {
        q.clear();
        r = std::move(a);
        return;
    }
    q.assign(a.size() - b.size() + 1, mpq_class(0));
    for (std::size_t shift = q.size(); shift-- > 0;) {
        mpq_class t = a[shift + b.size() - 1] / b.back();
        q[shift] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= t * b[j];
    }
    qtrim(a);
    r = std::move(a);
}

QVec qmul(const QVec& a, const QVec& b) {
    if (a.empty() || b.empty()) return {};
    QVec c(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

QVec qsub(QVec a, const QVec& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qtrim(a);
    return a;
}

ComplexBall horner(const QVec& p, const ComplexBall& z, Prec prec) {
    ComplexBall acc;
    for (std::size_t k = p.size(); k-- > 0;) {
        acc = mul(acc, z, prec);
        acc = add(acc, ComplexBall(RealBall::from_mpq(p[k], prec)), prec);
    }
    return acc;
}

QVec qderiv(const QVec& p) {
    QVec d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    return d;
}

}  // namespace

NumberField::NumberField(Kind kind, std::vector<mpq_class> modulus, ComplexBall enclosure, bool real_root)
    : kind_(kind), modulus_(std::move(modulus)), enclosure_(std::move(enclosure)), real_root_(real_root) {}

FieldPtr NumberField::rationals() {
    static const FieldPtr q(new NumberField(Kind::Rational, {mpq_class(0), mpq_class(1)}, ComplexBall(), true));
    return q;
}

FieldPtr NumberField::gaussian() {
    static const FieldPtr g(new NumberField(Kind::Gaussian, {mpq_class(1), mpq_class(0), mpq_class(1)},
                                            ComplexBall::i(), false));
    return g;
}

FieldPtr NumberField::algebraic(std::vector<mpq_class> modulus, ComplexBall enclosure, bool real_root) {
    qtrim(modulus);
    if (modulus.size() < 2) throw DomainError("defining polynomial must have positive degree");
    mpq_class lc = modulus.back();
    for (auto& c : modulus) c /= lc;
    if (real_root) enclosure.im() = RealBall();
    return FieldPtr(new NumberField(Kind::Algebraic, std::move(modulus), std::move(enclosure), real_root));
}

ComplexBall NumberField::generator_ball(Prec prec) const {
    switch (kind_) {
        case Kind::Rational:
            return ComplexBall();
        case Kind::Gaussian:
            return ComplexBall::i();
        case Kind::Algebraic:
            break;
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.lower_bound(prec);
        if (it != cache_.end()) return it->second;
    }
    // Newton iteration on the midpoint, then a certified inclusion disc
    // D(z, d |m(z)/m'(z)|), which contains a root of m; the root is ours
    // when the disc lies inside the isolating enclosure.
    const int d = degree();
    QVec dm = qderiv(modulus_);
    ComplexBall z(RealBall::from_mid_rad(enclosure_.re().mid(), Float(kMagPrec)),
                  RealBall::from_mid_rad(enclosure_.im().mid(), Float(kMagPrec)));
    Prec wp = 64;
    const Prec target = prec + 16;
    for (int iter = 0; iter < 200; ++iter) {
        wp = std::min<Prec>(2 * wp, target);
        ComplexBall step = div(horner(modulus_, z, wp), horner(dm, z, wp), wp);
        ComplexBall nz = sub(z, step, wp);
        z = ComplexBall(RealBall::from_mid_rad(nz.re().mid(), Float(kMagPrec)),
                        RealBall::from_mid_rad(real_root_ ? Float(wp) : nz.im().mid(), Float(kMagPrec)));
        if (wp == target) {
            Float sa = step.upper_abs();
            if (mpfr_zero_p(sa.get()) || mpfr_get_exp(sa.get()) < -static_cast<long>(prec) - 4) break;
        }
    }
    ComplexBall w = div(horner(modulus_, z, target), horner(dm, z, target), target);
    Float r = w.upper_abs();
    mpfr_mul_si(r.get(), r.get(), d, MPFR_RNDU);
    ComplexBall result = z;
    result.re().add_error(r);
    if (!real_root_) result.im().add_error(r);
    if (!enclosure_.contains(result)) {
        // Refinement escaped the isolating region; fall back to the stored enclosure.
        return enclosure_;
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(prec, result);
    return result;
}

bool NumberField::same_as(const NumberField& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    if (kind_ != Kind::Algebraic) return true;
    return modulus_ == other.modulus_ && enclosure_.overlaps(other.enclosure_);
}

std::string NumberField::generator_name() const {
    switch (kind_) {
        case Kind::Rational:
            return "1";
        case Kind::Gaussian:
            return "I";
        case Kind::Algebraic:
            return "a";
    }
    return "?";
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b || b->is_rational()) return a;
    if (a->is_rational()) return b;
    if (a->same_as(*b)) return a;
    throw UnsupportedError("cannot combine elements of different number fields");
}

FieldElem::FieldElem() : field_(NumberField::rationals()), c_{mpq_class(0)} {}

FieldElem::FieldElem(long v) : field_(NumberField::rationals()), c_{mpq_class(v)} {}

FieldElem::FieldElem(const mpq_class& v) : field_(NumberField::rationals()), c_{v} {}

FieldElem::FieldElem(FieldPtr field, std::vector<mpq_class> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    normalize();
}

FieldElem FieldElem::generator(const FieldPtr& field) {
    if (field->is_rational()) throw DomainError("Q has no generator");
    std::vector<mpq_class> c(field->degree(), mpq_class(0));
    c[1] = 1;
    return FieldElem(field, std::move(c));
}

void FieldElem::normalize() {
    const int d = field_->degree();
    if (static_cast<int>(c_.size()) > d) {
        // reduce modulo the monic defining polynomial
        const auto& m = field_->modulus();
        for (std::size_t k = c_.size(); k-- > static_cast<std::size_t>(d);) {
            mpq_class t = c_[k];
            if (t == 0) continue;
            for (int j = 0; j <= d; ++j) c_[k - d + j] -= t * m[j];
        }
    }
    c_.resize(d, mpq_class(0));
}

bool FieldElem::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool FieldElem::is_rational() const {
    for (std::size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

void FieldElem::unify(FieldElem& o) {
    if (field_ == o.field_) return;
    FieldPtr f;
    if (field_->same_as(*o.field_) || o.is_rational())
        f = field_;
    else if (is_rational())
        f = o.field_;
    else
        throw UnsupportedError("cannot combine elements of different number fields");
    auto lift = [&f](FieldElem& e) {
        if (e.field_ == f) return;
        if (!e.field_->same_as(*f)) {
            mpq_class v = e.c_[0];
            e.c_.assign(f->degree(), mpq_class(0));
            e.c_[0] = v;
        }
        e.field_ = f;
    };
    lift(*this);
    lift(o);
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    FieldElem b = o;
    unify(b);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += b.c_[j];
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
    FieldElem b = o;
    unify(b);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= b.c_[j];
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    if (o.is_rational()) {
        const mpq_class v = o.c_[0];
        for (auto& c : c_) c *= v;
        return *this;
    }
    if (is_rational()) {
        const mpq_class v = c_[0];
        *this = o;
        for (auto& c : c_) c *= v;
        return *this;
    }
    FieldElem b = o;
    unify(b);
    c_ = qmul(c_, b.c_);
    normalize();
    return *this;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DomainError("division by zero in number field");
    if (is_rational()) {
        FieldElem r = *this;
        r.c_.assign(field_->degree(), mpq_class(0));
        r.c_[0] = 1 / c_[0];
        return r;
    }
    // extended Euclid: s*a + t*m = g
    QVec a = c_, m = field_->modulus();
    qtrim(a);
    QVec r0 = m, r1 = a, s0, s1{mpq_class(1)};
    while (!r1.empty()) {
        QVec q, r;
        qdivrem(r0, r1, q, r);
        QVec s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) throw DomainError("defining polynomial of the number field is reducible");
    for (auto& c : s0) c /= r0[0];
    return FieldElem(field_, std::move(s0));
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
    if (o.is_rational()) {
        if (o.c_[0] == 0) throw DomainError("division by zero");
        for (auto& c : c_) c /= o.c_[0];
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    FieldElem d = a;
    d -= b;
    return d.is_zero();
}

ComplexBall FieldElem::to_ball(Prec prec) const {
    switch (field_->kind()) {
        case NumberField::Kind::Rational:
            return ComplexBall(RealBall::from_mpq(c_[0], prec));
        case NumberField::Kind::Gaussian:
            if (c_[1] == 0) return ComplexBall(RealBall::from_mpq(c_[0], prec));
            return ComplexBall(RealBall::from_mpq(c_[0], prec), RealBall::from_mpq(c_[1], prec));
        case NumberField::Kind::Algebraic:
            break;
    }
    if (is_rational()) return ComplexBall(RealBall::from_mpq(c_[0], prec));
    Prec wp = prec + 16;
    ComplexBall g = field_->generator_ball(wp);
    ComplexBall r = horner(c_, g, wp);
    r.re().round(prec);
    r.im().round(prec);
    return r;
}

std::string FieldElem::to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        mpq_class c = c_[j];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            c = ::abs(c);
        }
        first = false;
        if (j == 0) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << field_->generator_name();
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

}  // namespace holomnum
