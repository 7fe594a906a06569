// qsolve: configurable-precision quintic solver and singular-value calculator.
//
//   qsolve solve 1 0 0 0 1 1 --digits 50 --json
//   qsolve constants --name k --r 5 --digits 60
//   qsolve verify --suite all
//
// Exit codes: 0 all non-informational gates pass, 1 a gate failed,
// 2 bad input or an evaluation error (reported with the stage it came from).

#include <CLI11.hpp>
#include <json.hpp>

#include "quintic/bring.hpp"
#include "quintic/hermite.hpp"
#include "quintic/modular_algebra.hpp"
#include "quintic/oracle.hpp"
#include "quintic/polynomial.hpp"
#include "quintic/precision.hpp"
#include "quintic/reduction.hpp"
#include "quintic/special_functions.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

using nlohmann::ordered_json;
using namespace quintic;

namespace {

// An evaluation failure annotated with the pipeline stage it surfaced in.
struct StageError : std::runtime_error {
    std::string stage;
    StageError(std::string where, const std::string& msg)
        : std::runtime_error(msg), stage(std::move(where)) {}
};

template <typename F>
auto at_stage(const char* where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const PrecisionError& e) {
        throw StageError(where, std::string(e.what()) + "; suggested fix: double --digits and rerun");
    } catch (const std::exception& e) {
        throw StageError(where, e.what());
    }
}

// ---- parsing ---------------------------------------------------------------

Real parse_real(const std::string& s) {
    try {
        return Real(s);
    } catch (const std::exception&) {
        throw StageError("input parsing", "not a decimal number: '" + s + "'");
    }
}

// Accepts "re" or "re,im", with optional surrounding (), [] and spaces.
Complex parse_complex(std::string s) {
    std::erase_if(s, [](char c) { return c == '(' || c == ')' || c == '[' || c == ']' || c == ' '; });
    auto comma = s.find(',');
    if (comma == std::string::npos) return Complex(parse_real(s));
    return {parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1))};
}

// Positive rational "p" or "p/q".
Real parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Real num = parse_real(slash == std::string::npos ? s : s.substr(0, slash));
    Real den = slash == std::string::npos ? Real(1) : parse_real(s.substr(slash + 1));
    if (!(den > 0)) throw StageError("input parsing", "rational denominator must be positive: '" + s + "'");
    return num / den;
}

// ---- serialization ---------------------------------------------------------

// Roots are printed with spare digits so a reader that re-parses the report
// reproduces the residuals instead of drowning them in rounding error.
ordered_json cpx(const Complex& z, unsigned digits) {
    return ordered_json::array({to_decimal(z.re, digits + 10), to_decimal(z.im, digits + 10)});
}

std::string fmt_real_short(const Real& x) { return x.str(6); }

std::string fmt_cpx_text(const Complex& z, unsigned digits) {
    std::string s = to_decimal(z.re, digits);
    if (z.im >= 0)
        s += " + " + to_decimal(z.im, digits) + "i";
    else
        s += " - " + to_decimal(-z.im, digits) + "i";
    return s;
}

ordered_json chain_json(const TransformChain& chain, const std::optional<Complex>& driver_shift,
                        unsigned digits) {
    ordered_json j;
    j["driver_shift"] = driver_shift ? cpx(*driver_shift, digits) : ordered_json(nullptr);
    j["shift"] = chain.shift ? cpx(*chain.shift, digits) : ordered_json(nullptr);
    if (chain.quad) {
        j["quad"] = {{"A", cpx(chain.quad->first, digits)}, {"B", cpx(chain.quad->second, digits)}};
    } else {
        j["quad"] = nullptr;
    }
    if (chain.quartic) {
        ordered_json q = ordered_json::array();
        for (const auto& c : *chain.quartic) q.push_back(cpx(c, digits));
        j["quartic"] = q;
    } else {
        j["quartic"] = nullptr;
    }
    j["scale"] = chain.scale ? cpx(*chain.scale, digits) : ordered_json(nullptr);
    return j;
}

// ---- solve -----------------------------------------------------------------

struct SolveOutcome {
    std::vector<Complex> roots;
    std::vector<Real> residuals;
    std::string method_used;
    TransformChain chain;
    std::optional<Complex> driver_shift;
    std::vector<std::string> notes;
    bool pass = false;
};

// Coefficients of p(x + s), ascending, by iterated synthetic division.
Poly taylor_shift(const Poly& p, const Complex& s) {
    std::vector<Complex> c = p.c;
    for (size_t i = 0; i + 1 < c.size(); ++i)
        for (size_t j = c.size() - 2;; --j) {
            c[j] = c[j] + s * c[j + 1];
            if (j == i) break;
        }
    return Poly{c};
}

void sort_roots(std::vector<Complex>& roots) {
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
}

void finish(SolveOutcome& out, const Poly& p, const NumericContext& ctx) {
    sort_roots(out.roots);
    out.pass = out.roots.size() == 5;
    out.residuals.clear();
    for (auto& x : out.roots) {
        bool ok = false;
        Complex polished = newton_polish(p, x, 40, ctx, &ok);
        if (ok || scaled_residual(p, polished) < scaled_residual(p, x)) x = polished;
        Real resid = scaled_residual(p, x);
        out.residuals.push_back(resid);
        if (!(resid < ctx.tol)) out.pass = false;
    }
}

// Five roots of x^5 + A2 x + B2 through the elliptic normal form y^5 - y + a.
std::vector<Complex> elliptic_bj_roots(const BringJerrard& bj, const NumericContext& ctx,
                                       std::vector<std::string>& notes) {
    Complex lambda = pow(-bj.A2, Real(1) / 4);
    Complex a = bj.B2 / pown(lambda, 5);
    notes.push_back("elliptic normal form: a = " + fmt_real_short(abs(a)) +
                    " (magnitude), scale |lambda| = " + fmt_real_short(abs(lambda)));
    Complex y0 = hermite_root(a, ctx);
    Poly bj5{{bj.B2, bj.A2, Complex(0), Complex(0), Complex(0), Complex(1)}};
    Complex x0 = newton_polish(bj5, lambda * y0, 60, ctx);
    std::vector<Complex> roots{x0};
    Poly quartic = deflate(bj5, x0);
    for (const auto& r : solve_quartic(quartic, ctx)) roots.push_back(newton_polish(bj5, r, 60, ctx));
    return roots;
}

// Fifth roots of -B2, for the degenerate trinomial x^5 + B2 = 0.
std::vector<Complex> pure_power_roots(const Complex& B2, const NumericContext& ctx) {
    std::vector<Complex> roots;
    if (abs(B2) == 0) return std::vector<Complex>(5, Complex(0));
    Complex base = pow(-B2, Real(1) / 5);
    for (int k = 0; k < 5; ++k) {
        ScopedDigits guard(ctx.working_digits + 10);
        roots.push_back(base * polar(Real(1), 2 * const_pi() * k / 5));
    }
    return roots;
}

// Structured path: Tschirnhausen reduction, then either the series solver on
// y^5 + y + t or the elliptic solver on y^5 - y + a, then the chain inverse.
// A degenerate quartic stage is retried under a driver-level pre-shift.
SolveOutcome run_structured(const Poly& p, const std::string& method, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + 20);
    const Real kShifts[] = {Real(0), Real(3) / 16, Real(-5) / 16, Real(9) / 16, Real(-11) / 16};
    std::string last_stage = "principal reduction";
    std::string last_what;
    for (const Real& sigma : kShifts) {
        SolveOutcome out;
        out.method_used = method;
        bool shifted = !(sigma == 0);
        if (shifted) {
            out.driver_shift = Complex(sigma);
            out.notes.push_back("retrying under pre-shift x -> x + " + fmt_real_short(sigma));
        }
        Poly work = shifted ? taylor_shift(p, Complex(sigma)) : p;
        try {
            PrincipalQuintic pr = at_stage("principal reduction", [&] {
                return to_principal(work, out.chain, ctx);
            });
            if (out.chain.shift)
                out.notes.push_back("principal reduction engaged its internal shift " +
                                    fmt_real_short(out.chain.shift->re));
            BringJerrard bj = at_stage("quartic reduction", [&] {
                return to_bring_jerrard(pr, out.chain, ctx);
            });
            out.notes.push_back("depressed trinomial: |A2| = " + fmt_real_short(abs(bj.A2)) +
                                ", |B2| = " + fmt_real_short(abs(bj.B2)));
            std::vector<Complex> reduced;
            Real a2_floor = ctx.tol * (std::max)(Real(1), abs(bj.B2));
            if (abs(bj.A2) <= a2_floor) {
                out.notes.push_back("linear term vanished; closing with fifth roots of -B2");
                reduced = at_stage("pure power roots", [&] { return pure_power_roots(bj.B2, ctx); });
            } else if (method == "hermite") {
                reduced = at_stage("elliptic normal-form root", [&] {
                    return elliptic_bj_roots(bj, ctx, out.notes);
                });
            } else {
                BringForm bf = at_stage("unit rescale", [&] { return to_bring(bj, out.chain, ctx); });
                out.notes.push_back("series normal form: |t| = " + fmt_real_short(abs(bf.t)));
                reduced = at_stage("series normal-form roots", [&] { return all_roots(bf, ctx); });
            }
            out.roots = at_stage("back-mapping", [&] { return back_map(reduced, out.chain, work, ctx); });
            if (shifted)
                for (auto& x : out.roots) x = x + Complex(sigma);
            finish(out, p, ctx);
            return out;
        } catch (const StageError& e) {
            // Only a degenerate reduction is worth a pre-shift retry; anything
            // else fails the same way at every shift.
            last_stage = e.stage;
            last_what = e.what();
            bool degenerate = e.stage == "principal reduction" || e.stage == "quartic reduction" ||
                              e.stage == "back-mapping";
            if (!degenerate) throw;
        }
    }
    throw StageError(last_stage, last_what + " (pre-shift retries exhausted)");
}

SolveOutcome run_oracle(const Poly& p, const NumericContext& ctx) {
    ScopedDigits guard(ctx.working_digits + 20);
    SolveOutcome out;
    out.method_used = "oracle";
    out.roots = at_stage("simultaneous iteration", [&] { return all_roots_reference(p, ctx); });
    finish(out, p, ctx);
    return out;
}

SolveOutcome run_solve(const Poly& p, const std::string& method, const NumericContext& ctx) {
    if (method == "oracle") return run_oracle(p, ctx);
    if (method == "bring" || method == "hermite") return run_structured(p, method, ctx);
    // auto: structured first, reference finder as the safety net.
    std::string note;
    try {
        SolveOutcome out = run_structured(p, "bring", ctx);
        if (out.pass) return out;
        note = "structured path residuals missed the tolerance; fell back to the reference finder";
    } catch (const StageError& e) {
        note = std::string("structured path failed in ") + e.stage + " (" + e.what() +
               "); fell back to the reference finder";
    }
    SolveOutcome out = run_oracle(p, ctx);
    out.notes.insert(out.notes.begin(), note);
    return out;
}

int cmd_solve(const std::vector<std::string>& coeff_args, bool ascending, const std::string& method,
              unsigned digits, const std::string& tol_str, bool json_out) {
    ScopedDigits guard(digits + 20);
    NumericContext ctx(digits, parse_real(tol_str));

    std::vector<Complex> coeffs;  // as given
    for (const auto& s : coeff_args) coeffs.push_back(parse_complex(s));
    std::vector<Complex> desc = coeffs;
    if (ascending) std::reverse(desc.begin(), desc.end());
    if (!(abs(desc[0]) > 0)) throw StageError("input validation", "leading coefficient must be nonzero");

    bool normalized = !(desc[0].re == 1 && desc[0].im == 0);
    std::vector<Complex> monic = desc;
    if (normalized)
        for (auto& c : monic) c = c / desc[0];
    Poly p = Poly::from_descending(monic);

    SolveOutcome out = run_solve(p, method, ctx);
    if (normalized) out.notes.push_back("input normalized to a monic quintic before solving");

    if (json_out) {
        ordered_json j;
        j["command"] = "solve";
        j["method_requested"] = method;
        j["method_used"] = out.method_used;
        j["digits"] = digits;
        j["tolerance"] = tol_str;
        ordered_json cj = ordered_json::array();
        for (const auto& c : desc) cj.push_back(cpx(c, digits));
        j["coefficients_descending"] = cj;
        j["monic_normalized"] = normalized;
        ordered_json rj = ordered_json::array(), sj = ordered_json::array();
        for (const auto& x : out.roots) rj.push_back(cpx(x, digits));
        for (const auto& r : out.residuals) sj.push_back(to_decimal(r, 8));
        j["roots"] = rj;
        j["residuals"] = sj;
        j["chain"] = chain_json(out.chain, out.driver_shift, digits);
        j["diagnostics"] = out.notes;
        j["pass"] = out.pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "method: " << out.method_used << "   digits: " << digits << "   tol: " << tol_str
                  << "\n";
        for (size_t i = 0; i < out.roots.size(); ++i)
            std::cout << "  root " << i + 1 << ":  " << fmt_cpx_text(out.roots[i], digits)
                      << "   residual " << fmt_real_short(out.residuals[i]) << "\n";
        for (const auto& n : out.notes) std::cout << "  note: " << n << "\n";
        std::cout << (out.pass ? "PASS" : "FAIL") << ": residual gate "
                  << (out.pass ? "met" : "missed") << " at " << tol_str << "\n";
    }
    return out.pass ? 0 : 1;
}

// ---- constants -------------------------------------------------------------

int cmd_constants(const std::string& name, const std::string& r_str, unsigned digits,
                  unsigned long depth, const std::string& branch, bool json_out) {
    ScopedDigits guard(digits + 20);
    Real r = parse_rational(r_str);
    if (!(r > 0)) throw StageError("input validation", "--r must be a positive rational");
    NumericContext ctx = NumericContext::for_r(r, digits);
    ScopedDigits work_guard(ctx.working_digits + 20);

    Complex value;
    std::string route;
    ordered_json extras;
    if (name == "k") {
        EllipticContext ec = at_stage("period-ratio inversion", [&] { return modulus_from_r(r, ctx); });
        if (branch.empty()) {
            value = ec.k;
            route = "period-ratio inversion (theta quotient at q = e^{-pi sqrt(r)})";
        } else {
            TBranch b = branch == "t31"   ? TBranch::t31
                        : branch == "t32" ? TBranch::t32
                        : branch == "t33" ? TBranch::t33
                                          : TBranch::t34;
            Complex j = at_stage("Klein invariant", [&] { return j_from_modulus(ec.k, ctx); });
            value = at_stage("invariant branch map", [&] { return t3(j, b, ctx); });
            route = "Klein-invariant branch map " + branch;
            extras["canonical_k"] = cpx(ec.k, ctx.working_digits);
            extras["branch_vs_canonical"] = to_decimal(abs(value - ec.k), 8);
        }
        extras["k_prime"] = cpx(ec.k_prime, ctx.working_digits);
        extras["nome"] = cpx(ec.q, ctx.working_digits);
    } else if (name == "rrcf") {
        Nome qn = at_stage("nome construction", [&] { return Nome::from_r(r, ctx); });
        unsigned long used = depth ? depth : suggested_rrcf_depth(qn, ctx);
        value = at_stage("continued fraction", [&] { return rrcf(qn, used, ctx).v; });
        route = "backward recurrence, depth " + std::to_string(used);
        extras["depth"] = used;
        extras["nome"] = cpx(qn.q, ctx.working_digits);
    } else {  // j
        EllipticContext ec = at_stage("period-ratio inversion", [&] { return modulus_from_r(r, ctx); });
        value = at_stage("Klein invariant", [&] { return j_from_modulus(ec.k, ctx); });
        route = "Klein invariant of the period-ratio modulus";
        extras["modulus"] = cpx(ec.k, ctx.working_digits);
    }

    if (json_out) {
        ordered_json j;
        j["command"] = "constants";
        j["name"] = name;
        j["r"] = r_str;
        j["digits"] = ctx.working_digits;
        j["route"] = route;
        j["value"] = cpx(value, ctx.working_digits);
        j["extras"] = extras;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << name << "(r = " << r_str << ") = " << fmt_cpx_text(value, ctx.working_digits)
                  << "\n  route: " << route << "\n";
        if (ctx.working_digits != digits)
            std::cout << "  note: working precision raised to " << ctx.working_digits
                      << " digits for this parameter\n";
    }
    return 0;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite, unsigned digits, bool json_out) {
    ScopedDigits guard(2 * digits + 20);
    NumericContext ctx(digits);
    bool run_identities = suite == "all" || suite == "modular" || suite == "conjectural";
    bool run_pipeline = suite == "all" || suite == "pipeline";

    ordered_json out;
    out["command"] = "verify";
    out["suite"] = suite;
    out["digits"] = digits;
    bool gate_pass = true;
    std::ostringstream text;

    if (run_identities) {
        std::vector<Complex> samples{Complex(Real(3) / 100), Complex(Real(5) / 100),
                                     Complex(Real(1) / 10)};
        ordered_json rows = ordered_json::array();
        for (const auto& tag : identity_tags()) {
            IdentityReport rep = at_stage("identity validation", [&] {
                return validate_identity(tag, samples, ctx);
            });
            bool want = suite == "all" || (suite == "modular" && rep.established) ||
                        (suite == "conjectural" && !rep.established);
            if (!want) continue;
            ordered_json rj = ordered_json::array();
            for (const auto& row : rep.rows)
                rj.push_back({{"q", to_decimal(row.q.re, 4)},
                              {"residual", to_decimal(row.residual, 6)},
                              {"pass", row.pass}});
            rows.push_back({{"tag", rep.tag},
                            {"established", rep.established},
                            {"gate", to_decimal(rep.gate, 4)},
                            {"rows", rj},
                            {"all_pass", rep.all_pass}});
            if (rep.established && !rep.all_pass) gate_pass = false;
            text << "  " << (rep.established ? "[gate]" : "[info]") << " " << rep.tag << ": "
                 << (rep.all_pass ? "pass" : (rep.established ? "FAIL" : "deviates")) << "\n";
        }
        out["identities"] = rows;
    }

    if (run_pipeline) {
        unsigned pd = std::max(digits, 50u);
        NumericContext pctx(pd);
        ScopedDigits pipe_guard(2 * pd);
        ordered_json rows = ordered_json::array();
        const Real gate = pow10(-25);
        for (int rv : {16, 20, 24}) {
            Real rr(rv);
            Nome qn = Nome::from_r(rr, pctx);
            MainTheoremReport rep = at_stage("composite-chain pipeline", [&] {
                return main_theorem_pipeline(qn, pctx);
            });
            Real chain_err = (std::max)({rep.t_direct_err, rep.l_direct_err, rep.m_neg_direct_err,
                                         rep.c1_direct_err});
            bool row_pass = rep.residual_minus < gate && chain_err < pctx.tol;
            if (!row_pass) gate_pass = false;
            rows.push_back(
                {{"r", rv},
                 {"residual", to_decimal(rep.residual_minus, 6)},
                 {"opposite_sign_residual", to_decimal(rep.residual_plus, 6)},
                 {"chain_error_max", to_decimal(chain_err, 6)},
                 {"quartic_product_deviation", to_decimal(rep.phi_alt_deviation, 6)},
                 {"branch_note", rep.deep_orbit_fallback ? "orbit fallback engaged" : "direct chain"},
                 {"pass", row_pass}});
            text << "  [gate] pipeline r = " << rv << ": residual "
                 << fmt_real_short(rep.residual_minus) << (row_pass ? " pass" : " FAIL") << " ("
                 << (rep.deep_orbit_fallback ? "orbit fallback engaged" : "direct chain")
                 << "; quartic-product deviation " << fmt_real_short(rep.phi_alt_deviation)
                 << " is informational)\n";
        }
        out["pipeline"] = rows;
    }

    out["pass"] = gate_pass;
    if (json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "verify suite '" << suite << "' at " << digits << " digits\n"
                  << text.str() << (gate_pass ? "PASS" : "FAIL")
                  << ": non-informational gates " << (gate_pass ? "met" : "missed") << "\n";
    }
    return gate_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quintic solver over an elliptic-modular special-function core"};
    app.require_subcommand(1);

    auto* s = app.add_subcommand("solve", "Solve a quintic from its six coefficients");
    std::vector<std::string> coeff_args;
    std::string method = "auto", tol_str = "1e-30";
    unsigned digits = 40;
    bool json_out = false, ascending = false;
    s->add_option("coefficients", coeff_args, "Six coefficients, descending powers; each 're' or 're,im'")
        ->expected(6)
        ->required();
    s->add_option("--method", method, "auto | bring | hermite | oracle")
        ->check(CLI::IsMember({"auto", "bring", "hermite", "oracle"}));
    s->add_option("--digits", digits, "Working decimal digits (>= 16)")->check(CLI::Range(16u, 100000u));
    s->add_option("--tol", tol_str, "Residual acceptance tolerance");
    s->add_flag("--json", json_out, "Emit a JSON report");
    s->add_flag("--ascending", ascending, "Coefficients are given in ascending powers");

    auto* c = app.add_subcommand("constants", "Evaluate singular values (modulus, continued fraction, invariant)");
    std::string name, r_str, branch;
    unsigned c_digits = 40;
    unsigned long depth = 0;
    bool c_json = false;
    c->add_option("--name", name, "k | rrcf | j")->required()->check(CLI::IsMember({"k", "rrcf", "j"}));
    c->add_option("--r", r_str, "Positive rational parameter, e.g. 5 or 6/7")->required();
    c->add_option("--digits", c_digits, "Working decimal digits (>= 16)")->check(CLI::Range(16u, 100000u));
    c->add_option("--depth", depth, "Continued-fraction truncation depth (0 = automatic)");
    c->add_option("--branch", branch, "Modulus via one branch of the invariant's degree-4 map")
        ->check(CLI::IsMember({"t31", "t32", "t33", "t34"}));
    c->add_flag("--json", c_json, "Emit a JSON report");

    auto* v = app.add_subcommand("verify", "Run the identity and pipeline validation suites");
    std::string suite = "all";
    unsigned v_digits = 40;
    bool v_json = false;
    v->add_option("--suite", suite, "modular | conjectural | pipeline | all")
        ->check(CLI::IsMember({"modular", "conjectural", "pipeline", "all"}));
    v->add_option("--digits", v_digits, "Working decimal digits (>= 16)")->check(CLI::Range(16u, 100000u));
    v->add_flag("--json", v_json, "Emit a JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (s->parsed()) return cmd_solve(coeff_args, ascending, method, digits, tol_str, json_out);
        if (c->parsed()) return cmd_constants(name, r_str, c_digits, depth, branch, c_json);
        return cmd_verify(suite, v_digits, v_json);
    } catch (const StageError& e) {
        bool wants_json = (s->parsed() && json_out) || (c->parsed() && c_json) || (v->parsed() && v_json);
        if (wants_json) {
            ordered_json err{{"error", e.what()}, {"stage", e.stage}};
            std::cout << err.dump(2) << "\n";
        }
        std::cerr << "error [" << e.stage << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
