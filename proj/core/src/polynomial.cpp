#include "holomnum/polynomial.hpp"

#include <sstream>

#include "holomnum/error.hpp"

namespace holomnum {

Polynomial::Polynomial(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

Polynomial Polynomial::constant(const FieldElem& c) { return Polynomial(std::vector<FieldElem>{c}); }

Polynomial Polynomial::monomial(const FieldElem& c, int k) {
    std::vector<FieldElem> v(static_cast<std::size_t>(k) + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_rationals(const std::vector<mpq_class>& coeffs) {
    std::vector<FieldElem> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.emplace_back(c);
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem Polynomial::coeff(int k) const {
    if (k < 0 || k > degree()) return FieldElem();
    return c_[k];
}

int Polynomial::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return -1;
}

FieldPtr Polynomial::field() const {
    for (const auto& c : c_)
        if (!c.is_rational()) return c.field();
    return NumberField::rationals();
}

bool Polynomial::has_rational_coeffs() const {
    for (const auto& c : c_)
        if (!c.is_rational()) return false;
    return true;
}

FieldElem Polynomial::operator()(const FieldElem& x) const {
    FieldElem acc;
    for (std::size_t k = c_.size(); k-- > 0;) {
        acc *= x;
        acc += c_[k];
    }
    return acc;
}

ComplexBall Polynomial::eval_ball(const ComplexBall& x, Prec prec) const {
    ComplexBall acc;
    for (std::size_t k = c_.size(); k-- > 0;) {
        acc = mul(acc, x, prec);
        acc = add(acc, c_[k].to_ball(prec), prec);
    }
    return acc;
}

std::vector<ComplexBall> Polynomial::to_balls(Prec prec) const {
    std::vector<ComplexBall> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.to_ball(prec));
    return out;
}

Polynomial Polynomial::derivative() const {
    std::vector<FieldElem> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * FieldElem(static_cast<long>(k)));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(const FieldElem& a) const {
    // Horner in the ring: ((c_n)(x + a) + c_{n-1})(x + a) + ...
    std::vector<FieldElem> r = c_;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) r[j] += a * r[j + 1];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    FieldElem inv = leading().inverse();
    Polynomial r = *this;
    for (auto& c : r.c_) c *= inv;
    return r;
}

Polynomial Polynomial::shift(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<FieldElem> r;
    if (k > 0) {
        r.assign(static_cast<std::size_t>(k), FieldElem());
        r.insert(r.end(), c_.begin(), c_.end());
    } else {
        if (valuation() < -k) throw DomainError("Polynomial::shift would drop nonzero terms");
        r.assign(c_.begin() - k, c_.end());
    }
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<FieldElem> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const FieldElem& c) {
    for (auto& x : c_) x *= c;
    trim();
    return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
        if (a.c_[k] != b.c_[k]) return false;
    return true;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const FieldElem& c = c_[k];
        if (c.is_zero()) continue;
        std::string cs = c.to_string();
        bool compound = !c.is_rational();
        bool negative = !compound && c.rational_value() < 0;
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << "-";
        first = false;
        if (negative) cs = mpq_class(-c.rational_value()).get_str();
        if (compound) cs = "(" + cs + ")";
        if (k == 0) {
            os << cs;
            continue;
        }
        if (cs != "1") os << cs << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

void divrem(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<FieldElem> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        q = Polynomial();
        r = a;
        return;
    }
    std::vector<FieldElem> quo(static_cast<std::size_t>(a.degree() - db + 1));
    FieldElem inv = b.leading().inverse();
    for (int k = a.degree(); k >= db; --k) {
        if (rem[k].is_zero()) continue;
        FieldElem t = rem[k] * inv;
        quo[k - db] = t;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= t * b.coeffs()[j];
    }
    rem.resize(static_cast<std::size_t>(db));
    q = Polynomial(std::move(quo));
    r = Polynomial(std::move(rem));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial q, r;
        divrem(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.degree() <= 0) return p.monic();
    Polynomial g = gcd(p, p.derivative());
    Polynomial q, r;
    divrem(p, g, q, r);
    return q.monic();
}

}  // namespace holomnum
