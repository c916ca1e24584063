#include "holomnum/diff_operator.hpp"

#include <algorithm>
#include <sstream>

#include "holomnum/error.hpp"

namespace holomnum {

std::string to_string(PointKind kind) {
    switch (kind) {
        case PointKind::Ordinary:
            return "ordinary";
        case PointKind::RegularSingular:
            return "regular_singular";
        case PointKind::Irregular:
            return "irregular";
    }
    return "?";
}

FieldPtr ThetaFormRecurrence::field() const {
    FieldPtr f = NumberField::rationals();
    for (const auto& p : q) f = common_field(f, p.field());
    return f;
}

namespace {

mpz_class binomial(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// theta (theta - 1) ... (theta - i + 1)
Polynomial falling(int i) {
    Polynomial r{1};
    for (int j = 0; j < i; ++j) r *= Polynomial{-j, 1};
    return r;
}

}  // namespace

DiffOperator::DiffOperator(std::vector<Polynomial> coeffs) : p_(std::move(coeffs)) { trim(); }

void DiffOperator::trim() {
    while (!p_.empty() && p_.back().is_zero()) p_.pop_back();
}

DiffOperator DiffOperator::x() { return DiffOperator({Polynomial{0, 1}}); }

DiffOperator DiffOperator::dx() { return DiffOperator({Polynomial(), Polynomial{1}}); }

DiffOperator DiffOperator::from_polynomial(const Polynomial& p) { return DiffOperator({p}); }

Polynomial DiffOperator::coeff(int i) const {
    if (i < 0 || i > order()) return Polynomial();
    return p_[i];
}

int DiffOperator::degree() const {
    int d = -1;
    for (const auto& p : p_) d = std::max(d, p.degree());
    return d;
}

FieldPtr DiffOperator::field() const {
    FieldPtr f = NumberField::rationals();
    for (const auto& p : p_) f = common_field(f, p.field());
    return f;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    std::vector<Polynomial> r(std::max(a.p_.size(), b.p_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return DiffOperator(std::move(r));
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
    std::vector<Polynomial> r(std::max(a.p_.size(), b.p_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return DiffOperator(std::move(r));
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
    if (a.is_zero() || b.is_zero()) return DiffOperator();
    std::vector<Polynomial> r(static_cast<std::size_t>(a.order() + b.order() + 1));
    // a_i Dx^i b_j Dx^j = a_i sum_k C(i,k) b_j^(k) Dx^(i-k+j)
    for (int j = 0; j <= b.order(); ++j) {
        Polynomial bj = b.p_[j];
        for (int k = 0; k <= a.order() && !bj.is_zero(); ++k) {
            for (int i = k; i <= a.order(); ++i) {
                if (a.p_[i].is_zero()) continue;
                r[i - k + j] += a.p_[i] * bj * FieldElem(mpq_class(binomial(i, k)));
            }
            bj = bj.derivative();
        }
    }
    return DiffOperator(std::move(r));
}

DiffOperator operator*(const Polynomial& c, const DiffOperator& b) {
    std::vector<Polynomial> r = b.p_;
    for (auto& p : r) p *= c;
    return DiffOperator(std::move(r));
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
    if (a.p_.size() != b.p_.size()) return false;
    for (std::size_t i = 0; i < a.p_.size(); ++i)
        if (a.p_[i] != b.p_[i]) return false;
    return true;
}

std::vector<FieldElem> DiffOperator::apply(const std::vector<FieldElem>& f) const {
    Polynomial g(f);
    Polynomial out;
    for (int i = 0; i <= order(); ++i) {
        out += p_[i] * g;
        g = g.derivative();
    }
    std::vector<FieldElem> r = out.coeffs();
    return r;
}

std::vector<ComplexBall> DiffOperator::apply(const std::vector<ComplexBall>& f, Prec prec) const {
    std::vector<ComplexBall> out;
    std::vector<ComplexBall> g = f;
    for (int i = 0; i <= order(); ++i) {
        std::vector<ComplexBall> pc = p_[i].to_balls(prec);
        if (!g.empty() && !pc.empty() && out.size() < g.size() + pc.size() - 1) out.resize(g.size() + pc.size() - 1);
        for (std::size_t a = 0; a < pc.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b) out[a + b] = addmul(out[a + b], pc[a], g[b], prec);
        std::vector<ComplexBall> dg;
        for (std::size_t k = 1; k < g.size(); ++k) dg.push_back(mul_si(g[k], static_cast<long>(k), prec));
        g = std::move(dg);
    }
    return out;
}

DiffOperator DiffOperator::translate(const FieldElem& a) const {
    std::vector<Polynomial> r;
    r.reserve(p_.size());
    for (const auto& p : p_) r.push_back(p.taylor_shift(a));
    return DiffOperator(std::move(r));
}

ThetaFormRecurrence DiffOperator::theta_form() const {
    if (is_zero()) throw DomainError("theta form of the zero operator");
    // x^j Dx^i = x^(j-i) theta^(i falling), so x^w L = sum p_ij x^(w+j-i) theta^(i falling).
    int w = -1 << 30;
    for (int i = 0; i <= order(); ++i) {
        int v = p_[i].valuation();
        if (v >= 0) w = std::max(w, i - v);
    }
    int span = 0;
    for (int i = 0; i <= order(); ++i)
        if (!p_[i].is_zero()) span = std::max(span, w + p_[i].degree() - i);
    ThetaFormRecurrence t;
    t.weight = w;
    t.q.assign(static_cast<std::size_t>(span) + 1, Polynomial());
    for (int i = 0; i <= order(); ++i) {
        if (p_[i].is_zero()) continue;
        Polynomial fi = falling(i);
        for (int j = 0; j <= p_[i].degree(); ++j) {
            const FieldElem& c = p_[i].coeffs()[j];
            if (c.is_zero()) continue;
            t.q[w + j - i] += fi * c;
        }
    }
    // Make q_0 monic, then clear denominators coordinate-wise.
    FieldElem lc = t.q[0].leading();
    FieldElem inv = lc.inverse();
    for (auto& p : t.q) p *= inv;
    mpz_class den = 1;
    for (const auto& p : t.q)
        for (const auto& c : p.coeffs())
            for (const auto& x : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    FieldElem d{mpq_class(den)};
    for (auto& p : t.q) p *= d;
    t.scale = lc / d;
    return t;
}

DiffOperator expand_theta_form(const ThetaFormRecurrence& t) {
    // theta^m = sum_i S(m, i) x^i Dx^i; build x^k theta^m iteratively:
    // theta * (x^a Dx^b) = a x^a Dx^b + x^(a+1) Dx^(b+1).
    DiffOperator theta({Polynomial(), Polynomial{0, 1}});
    DiffOperator sum;
    for (int k = 0; k <= t.span(); ++k) {
        DiffOperator qk;
        DiffOperator power = DiffOperator::from_polynomial(Polynomial{1});
        for (int m = 0; m <= t.q[k].degree(); ++m) {
            qk = qk + Polynomial::constant(t.q[k].coeffs()[m]) * power;
            power = theta * power;
        }
        sum = sum + Polynomial::monomial(FieldElem(1), k) * qk;
    }
    return Polynomial::constant(t.scale) * sum;
}

Polynomial DiffOperator::indicial_polynomial(const ExactPoint& x0) const {
    DiffOperator m = x0.is_zero() ? *this : translate(x0.value());
    return m.theta_form().q[0].monic();
}

std::vector<RootEnclosure> DiffOperator::singularities(Prec prec) const {
    if (is_zero()) throw DomainError("singularities of the zero operator");
    std::vector<RootEnclosure> roots = isolate_roots(leading(), prec);
    // Enclosures are disjoint, so midpoints give a consistent order.
    std::sort(roots.begin(), roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
        int c = mpfr_cmp(a.ball.re().mid().get(), b.ball.re().mid().get());
        return c != 0 ? c < 0 : mpfr_cmp(a.ball.im().mid().get(), b.ball.im().mid().get()) < 0;
    });
    return roots;
}

bool DiffOperator::is_singular_point(const ExactPoint& x0) const {
    if (is_zero()) throw DomainError("zero operator");
    return leading()(x0.value()).is_zero();
}

PointKind DiffOperator::classify(const ExactPoint& x0) const {
    if (!is_singular_point(x0)) return PointKind::Ordinary;
    return indicial_polynomial(x0).degree() == order() ? PointKind::RegularSingular : PointKind::Irregular;
}

std::string DiffOperator::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = order(); i >= 0; --i) {
        const Polynomial& p = p_[i];
        if (p.is_zero()) continue;
        std::string ps = p.to_string("x");
        bool single = p.valuation() == p.degree() && p.coeffs()[p.degree()].is_rational();
        bool negative = single && p.coeffs()[p.degree()].rational_value() < 0;
        if (negative) ps = (-p).to_string("x");
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << "-";
        first = false;
        std::string dx = i == 0 ? "" : (i == 1 ? "Dx" : "Dx^" + std::to_string(i));
        if (i == 0) os << (single ? ps : "(" + ps + ")");
        else if (ps == "1") os << dx;
        else os << (single ? ps : "(" + ps + ")") << "*" << dx;
    }
    return os.str();
}

}  // namespace holomnum
