#include <mpfr.h>

#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "holomnum/error.hpp"
#include "holomnum/local_basis.hpp"

namespace holomnum::cli {

namespace {

using nlohmann::json;

json ball_json(const ComplexBall& b) { return json::parse(format_ball_json(b)); }

/// "x", "x - 1", "x + 1/2", "x - 0.02943725152285942?"
std::string local_variable(const ExactPoint& p) {
    if (p.is_zero()) return "x";
    std::string v;
    bool negative = false;
    if (p.field()->kind() == NumberField::Kind::Algebraic) {
        ComplexBall b = p.eval_ball(64);
        if (b.im().is_zero()) {
            negative = b.re().is_negative();
            v = approx_decimal((negative ? neg(b.re()) : b.re()).mid(), 16) + "?";
        } else {
            v = "(" + p.to_string() + ")";
        }
    } else if (p.is_rational()) {
        mpq_class q = p.value().rational_value();
        negative = q < 0;
        v = mpq_class(abs(q)).get_str();
    } else {
        v = "(" + p.to_string() + ")";
    }
    return negative ? "x + " + v : "x - " + v;
}

std::vector<std::string> monomial_names(const LocalBasisStructure& s, const ExactPoint& p) {
    std::vector<std::string> names;
    const std::string var = local_variable(p);
    for (const auto& m : s.monomials) names.push_back(format_monomial(m, var));
    return names;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

EngineOptions options_of(const Request& req) {
    EngineOptions o;
    o.eps = parse_eps(req.eps);
    o.max_retries = req.max_retries;
    o.algorithm = req.algorithm;
    return o;
}

void warn_eps(const Float& radius, const Request& req, std::ostream& err) {
    err << "warning: achieved radius " << radius.to_string(3, MPFR_RNDU) << " exceeds eps = " << req.eps << " after the retry limit\n";
}

int run_eval(const Request& req, std::ostream& out, std::ostream& err) {
    DiffOperator L = parse_operator(req.op);
    auto ini = parse_ini(req.ini);
    auto path = parse_path(req.path);
    SolutionResult res = numerical_solution(L, ini, path, options_of(req));
    if (!res.met_eps) warn_eps(res.radius, req, err);
    if (req.format == Format::Json) {
        json j{{"value", ball_json(res.value)},
               {"met_eps", res.met_eps},
               {"precision", res.prec},
               {"attempts", res.attempts}};
        out << j.dump(2) << "\n";
    } else {
        out << format_ball(res.value) << "\n";
    }
    return kExitOk;
}

int run_transition(const Request& req, std::ostream& out, std::ostream& err) {
    DiffOperator L = parse_operator(req.op);
    auto path = parse_path(req.path);
    TransitionResult res = numerical_transition_matrix(L, path, options_of(req));
    if (!res.met_eps) warn_eps(res.radius, req, err);
    const BallMatrix& m = res.matrix;
    if (req.format == Format::Json) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ball_json(m(i, j)));
            rows.push_back(row);
        }
        json j{{"matrix", rows},
               {"source_basis", monomial_names(res.source, path.front())},
               {"target_basis", monomial_names(res.target, path.back())},
               {"met_eps", res.met_eps},
               {"precision", res.prec},
               {"attempts", res.attempts},
               {"steps", res.steps}};
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<std::string> row;
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_ball(m(i, j)));
            out << (i == 0 ? "[" : " ") << "[" << join(row, ", ") << "]" << (i + 1 == m.rows() ? "]" : ",") << "\n";
        }
    }
    return kExitOk;
}

int run_local_basis(const Request& req, std::ostream& out) {
    DiffOperator L = parse_operator(req.op);
    ExactPoint p = parse_point(req.point);
    auto names = monomial_names(local_basis_monomials(L, p), p);
    if (req.format == Format::Json) {
        out << json{{"point", p.to_string()}, {"kind", to_string(L.classify(p))}, {"monomials", names}}.dump(2) << "\n";
    } else {
        out << join(names, ", ") << "\n";
    }
    return kExitOk;
}

int run_singularities(const Request& req, std::ostream& out) {
    DiffOperator L = parse_operator(req.op);
    std::vector<RootEnclosure> roots = L.leading().degree() > 0 ? L.singularities(128) : std::vector<RootEnclosure>{};
    std::vector<mpq_class> coeffs;
    const Polynomial sqfree = squarefree_part(L.leading());
    for (const auto& c : sqfree.coeffs()) coeffs.push_back(c.rational_value());
    json list = json::array();
    for (const auto& root : roots) {
        // Exact point for classification: rational roots directly, other
        // roots through their isolating box.
        std::string kind;
        try {
            auto rat = [](const Float& f) {
                mpq_class q;
                mpfr_get_q(q.get_mpq_t(), f.get());
                return q;
            };
            const Prec wp = 128;
            ExactPoint p = ExactPoint::algebraic(coeffs, rat(root.ball.re().lower(wp)), rat(root.ball.re().upper(wp)),
                                                 rat(root.ball.im().lower(wp)), rat(root.ball.im().upper(wp)));
            kind = to_string(L.classify(p));
        } catch (const Error&) {
            kind = "unclassified";
        }
        if (req.format == Format::Json) {
            list.push_back(json{{"point", ball_json(root.ball)}, {"real", root.real}, {"kind", kind}});
        } else {
            out << format_ball(root.ball) << "  " << kind << "\n";
        }
    }
    if (req.format == Format::Json) out << json{{"singularities", list}}.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run(const Request& req, std::ostream& out, std::ostream& err) {
    try {
        switch (req.command) {
            case Command::Eval:
                return run_eval(req, out, err);
            case Command::Transition:
                return run_transition(req, out, err);
            case Command::LocalBasis:
                return run_local_basis(req, out);
            case Command::Singularities:
                return run_singularities(req, out);
        }
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace holomnum::cli
