// siegel: command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "siegel/appendix_checks.hpp"
#include "siegel/ladder.hpp"
#include "siegel/lift.hpp"

using namespace siegel;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string format = "json";
    unsigned long long budget = default_budget();
    unsigned long long seed = 20240611ULL;
    QuadratureConfig quad{};
    std::string lambda_file;
    std::string cmap_file;

    void validate() const {
        if (format != "json" && format != "csv") throw InvalidArgument("format must be json or csv");
        if (budget == 0) throw InvalidArgument("budget must be positive");
        quad.validate();
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<long long> parse_csv_ints(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("not an integer: '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace((unsigned char)tok[pos])) ++pos;
        if (pos != tok.size()) throw InvalidArgument("not an integer: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument("empty vector");
    return out;
}

// split: (a_1..a_m, b_1..b_m[, a_0]); antidiagonal: x with q = sum_{i<m} x_i x_{N-1-i} (+ x_m^2 for odd n)
EtaVector parse_eta(int n, const std::string& csv, const std::string& layout) {
    SplitQuadraticSpace sp(n);
    auto x = parse_csv_ints(csv);
    if ((int)x.size() != sp.dim())
        throw InvalidArgument("eta needs " + std::to_string(sp.dim()) + " coordinates for n = " + std::to_string(n));
    if (layout == "split") return EtaVector(sp, x);
    if (layout != "antidiagonal") throw InvalidArgument("layout must be split or antidiagonal");
    const int m = sp.m, N = sp.dim();
    std::vector<long long> c(N, 0);
    for (int i = 0; i < m; ++i) {
        c[i] = x[i];
        c[m + i] = x[N - 1 - i];
    }
    if (sp.odd()) c[2 * m] = x[m];
    return EtaVector(sp, c);
}

std::string poly_str(const RatLaurent& P) {
    if (P.is_zero()) return "0";
    std::string s;
    for (auto& [e, c] : P.terms()) {
        std::string cs = is_integer(c) ? c.get_num().get_str() : to_string(c);
        std::string t;
        if (e == 0)
            t = cs;
        else
            t = (c == 1 ? std::string() : c == -1 ? std::string("-") : cs + "*") + "X" + (e == 1 ? "" : "^" + std::to_string(e));
        if (s.empty())
            s = t;
        else if (t[0] == '-')
            s += " - " + t.substr(1);
        else
            s += " + " + t;
    }
    return s;
}

json coeff_list(const RatLaurent& P) {
    json a = json::array();
    for (auto& [e, c] : P.terms()) a.push_back({{"exp", e}, {"coeff", to_string(c)}});
    return a;
}

json coeff_list(const QuadLaurent& P) {
    json a = json::array();
    for (auto& [e, c] : P.terms()) a.push_back({{"exp", e}, {"coeff", c.str()}});
    return a;
}

json pi_json(const PiScaledRational& x) { return {{"scalar", x.scalar().str()}, {"pi_exp_times_2", x.pi_exp_times_2()}}; }

json invariants_json(const LocalInvariants& inv, const Integer& q) {
    json j = {{"p", inv.p}, {"q", q.get_str()}, {"k", inv.k}, {"kprime", inv.kprime}, {"q1", inv.q1.get_str()}};
    if (inv.has_chi) j["chi"] = inv.chi;
    if (inv.two_adic_case) j["two_adic_case"] = inv.two_adic_case;
    return j;
}

// -0 prints as 0
double unsign_zero(double x) { return x == 0 ? 0.0 : x; }
std::string g17(double x) { return fmt_g(unsign_zero(x), 17); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void attach_eigenform(LiftContext& ctx, const RunConfig& rc) {
    if (!rc.lambda_file.empty())
        ctx.use_eigenform(eigenform_from_file(rc.lambda_file, ctx.k));
    else
        ctx.use_builtin_eigenform();
    if (!rc.cmap_file.empty()) ctx.cmap = read_value_map(rc.cmap_file);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"siegel: local Siegel series, Eisenstein and lift coefficients, archimedean checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value config file; command-line flags take precedence");

    RunConfig rc;
    app.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--budget", rc.budget, "brute-force evaluation budget")->envname("SIEGEL_BUDGET");
    app.add_option("--seed", rc.seed, "seed for randomized matrices");
    app.add_option("--rel-tol", rc.quad.rel_tol, "quadrature relative tolerance");
    app.add_option("--abs-tol", rc.quad.abs_tol, "quadrature absolute tolerance");
    app.add_option("--max-depth", rc.quad.max_depth, "quadrature bisection depth");
    app.add_option("--radius", rc.quad.radius, "truncation margin for infinite ranges");
    app.add_option("--lambda-file", rc.lambda_file, "eigenvalues, lines 'm value'");
    app.add_option("--cmap-file,--cmap", rc.cmap_file, "half-integral weight c(m), lines 'm value'");

    std::function<int()> action;
    int n = 0, l = 0;
    long p = 0;
    std::string eta_csv, layout = "split";
    auto eta_opts = [&](CLI::App* c, bool need_l) {
        c->add_option("--n", n, "n >= 3")->required();
        if (need_l) c->add_option("--l", l, "weight l")->required();
        c->add_option("--eta", eta_csv, "comma-separated coordinates")->required();
        c->add_option("--layout", layout, "split or antidiagonal")->check(CLI::IsMember({"split", "antidiagonal"}));
    };

    // siegel
    auto* c_siegel = app.add_subcommand("siegel", "local data J, Q, Qtilde at one prime");
    eta_opts(c_siegel, false);
    c_siegel->add_option("--p", p, "prime")->required();
    c_siegel->callback([&] {
        action = [&] {
            if (rc.format != "json") throw UsageError("siegel emits json only");
            EtaVector eta = parse_eta(n, eta_csv, layout);
            if (!is_prime(p)) throw InvalidArgument("p must be prime");
            auto d = siegel_local_data(eta, p);
            int checked = 0, matched = 0;
            for (int r = 0; r <= d.inv.v() + 3; ++r) {
                try {
                    Integer red = b_r_reduced(eta, p, r, rc.budget);
                    ++checked;
                    if (red == b_r_closed(eta, p, r)) ++matched;
                } catch (const BudgetExceeded&) {
                }
            }
            json j;
            j["n"] = n;
            j["p"] = p;
            j["eta"] = eta.csv();
            j["m"] = d.m;
            j["parity"] = parity_name(d.parity);
            j["invariants"] = invariants_json(d.inv, qform(eta));
            j["J"] = coeff_list(d.J);
            j["Q"] = poly_str(d.Q);
            j["Q_coeffs"] = coeff_list(d.Q);
            j["Qtilde"] = coeff_list(d.Qtilde);
            j["degree"] = d.degree;
            j["functional_eq"] = d.functional_eq;
            if (!d.chi2_trials.empty()) {
                json t = json::array();
                for (auto& x : d.chi2_trials)
                    t.push_back({{"convention", chi2_name(x.convention)}, {"chi", x.chi}, {"passed", x.passed},
                                 {"reason", x.reason}});
                j["chi2_trials"] = t;
            }
            j["oracle"] = {{"checked", checked}, {"matched", matched}};
            emit(j);
            return matched == checked ? 0 : 1;
        };
    });

    // oracle-check
    LadderSpec ls;
    std::vector<int> ns;
    std::vector<long> ps;
    std::string parity;
    bool inject = false, no_case1 = false;
    auto* c_oracle = app.add_subcommand("oracle-check", "closed vs reduced vs brute-force B_r, one CSV row per (eta, p, r)");
    c_oracle->add_option("--n", ns, "values of n (default 4,10,3,5)")->delimiter(',');
    c_oracle->add_option("--p", ps, "primes (default 2,3,5)")->delimiter(',');
    c_oracle->add_option("--kmax", ls.kmax, "largest k");
    c_oracle->add_option("--kpmax", ls.kpmax, "largest k'");
    c_oracle->add_option("--per-combo", ls.per_combo, "eta per (n, p, k, k')");
    c_oracle->add_option("--rmax", ls.rmax, "cap on r");
    c_oracle->add_option("--extra-r", ls.extra_r, "r runs to 2k + k' + extra-r");
    c_oracle->add_option("--parity", parity, "even or odd")->check(CLI::IsMember({"even", "odd"}));
    c_oracle->add_flag("--inject-fault", inject, "corrupt the closed value at r = 1 (tests the tester)");
    c_oracle->add_flag("--no-case1", no_case1, "skip the extra p = 2 Case 1 vectors");
    c_oracle->callback([&] {
        action = [&] {
            if (!ns.empty()) ls.ns = ns;
            if (!ps.empty()) ls.primes = ps;
            for (long q : ls.primes)
                if (!is_prime(q)) throw InvalidArgument("not a prime: " + std::to_string(q));
            if (ls.per_combo < 1 || ls.kmax < 0 || ls.kpmax < 0 || ls.rmax < 0 || ls.extra_r < 0)
                throw InvalidArgument("matrix sizes must be nonnegative, per-combo >= 1");
            if (!parity.empty()) ls.parity = parity == "odd" ? Parity::Odd : Parity::Even;
            ls.case1 = !no_case1;
            ls.seed = rc.seed;
            ls.budget = rc.budget;
            std::cout << ladder_csv_header() << "\n";
            long rows = 0, bad = 0, skipped = 0;
            for (auto& c : ladder_cases(ls))
                for (auto& r : ladder_rows(c, ls, inject)) {
                    std::cout << ladder_csv(r) << "\n";
                    ++rows;
                    bad += r.status == "mismatch";
                    skipped += r.status == "skipped";
                }
            std::cerr << "rows " << rows << ", mismatches " << bad << ", skipped " << skipped << "\n";
            return bad ? 1 : 0;
        };
    });

    // eigenform
    int weight = 12, terms = 20;
    auto* c_eig = app.add_subcommand("eigenform", "Hecke eigenvalues of the eigenform spanning S_k");
    c_eig->add_option("--weight", weight, "k")->required();
    c_eig->add_option("--terms", terms, "number of eigenvalues")->check(CLI::Range(1, 100000));
    c_eig->callback([&] {
        action = [&] {
            EigenformData f;
            if (!rc.lambda_file.empty())
                f = eigenform_from_file(rc.lambda_file, weight);
            else
                f = eigenform(weight, terms);
            if (f.precision() < terms) (void)f(terms);
            if (rc.format == "csv") {
                std::cout << "m,lambda\n";
                for (int m = 1; m <= terms; ++m) std::cout << m << "," << f(m).get_str() << "\n";
                return 0;
            }
            json lam = json::array();
            for (int m = 1; m <= terms; ++m) lam.push_back(f(m).get_str());
            emit({{"weight", weight}, {"terms", terms}, {"lambda", lam}});
            return 0;
        };
    });

    // lift-coef
    auto* c_lift = app.add_subcommand("lift-coef", "Fourier coefficient of the lift at eta");
    eta_opts(c_lift, true);
    c_lift->callback([&] {
        action = [&] {
            EtaVector eta = parse_eta(n, eta_csv, layout);
            LiftContext ctx(n, l);
            attach_eigenform(ctx, rc);
            LiftValue v;
            if (ctx.space.odd()) {
                v = lift_coefficient_odd(ctx, eta);
            } else {
                v.value = lift_coefficient_even(ctx, eta);
                v.numeric = Decimal50(v.value.get_num().get_str()) / Decimal50(v.value.get_den().get_str());
            }
            std::string val = v.exact ? to_string(v.value) : "";
            if (rc.format == "csv") {
                std::cout << "n,l,k,eta,q,exact,value,numeric\n"
                          << n << "," << l << "," << ctx.k << ",\"" << eta.csv() << "\"," << qform(eta).get_str() << ","
                          << (v.exact ? "true" : "false") << "," << val << "," << v.numeric.str(50) << "\n";
                return 0;
            }
            json j = {{"n", n}, {"l", l}, {"k", ctx.k}, {"eta", eta.csv()}, {"q", qform(eta).get_str()}, {"exact", v.exact}};
            j["value"] = v.exact ? json(val) : json(nullptr);
            j["numeric"] = v.numeric.str(50);
            emit(j);
            return 0;
        };
    });

    // eisenstein-coef
    auto* c_eis = app.add_subcommand("eisenstein-coef", "Fourier coefficient of the Siegel Eisenstein series");
    eta_opts(c_eis, true);
    c_eis->callback([&] {
        action = [&] {
            EtaVector eta = parse_eta(n, eta_csv, layout);
            auto d = eisenstein_detail(l, eta);
            if (rc.format == "csv") {
                std::cout << "n,l,eta,q,scalar,pi_exp_times_2\n"
                          << n << "," << l << ",\"" << eta.csv() << "\"," << qform(eta).get_str() << ","
                          << d.value.scalar().str() << "," << d.value.pi_exp_times_2() << "\n";
                return 0;
            }
            json j = {{"n", n}, {"l", l}, {"eta", eta.csv()}, {"q", qform(eta).get_str()}};
            j["value"] = pi_json(d.value);
            j["constant"] = pi_json(d.constant);
            j["local_product"] = d.local_product.str();
            if (eta.space.odd()) {
                j["fundamental"] = d.fundamental.get_str();
                j["L_value"] = to_string(d.L_value);
            } else {
                j["forms_agree"] = d.forms_agree;
            }
            j["numeric"] = g17(d.value.to_double());
            emit(j);
            return 0;
        };
    });

    // fjc
    long S = -1, xi_sigma = 0;
    int cutoff = 30;
    auto* c_fjc = app.add_subcommand("fjc", "formal Fourier-Jacobi coefficient, compared with the eigenvalues");
    c_fjc->add_option("--n", n, "even n")->required();
    c_fjc->add_option("--l", l, "weight l")->required();
    c_fjc->add_option("--S", S, "S != 0")->required();
    c_fjc->add_option("--xi-sigma", xi_sigma, "sigma(xi, xi)");
    c_fjc->add_option("--cutoff", cutoff, "largest N")->required();
    c_fjc->callback([&] {
        action = [&] {
            LiftContext ctx(n, l);
            attach_eigenform(ctx, rc);
            auto ts = fjc_series(ctx, S, xi_sigma, cutoff);
            bool match = true;
            for (auto& t : ts) match = match && t.value == Rational(ctx.lambda(t.N));
            if (rc.format == "json") {
                json a = json::array();
                for (auto& t : ts) a.push_back({{"N", t.N}, {"a", t.a.get_str()}, {"value", to_string(t.value)}});
                emit({{"n", n}, {"l", l}, {"S", S}, {"xi_sigma", xi_sigma}, {"cutoff", cutoff}, {"terms", a},
                      {"matches_eigenform", match}});
                return 0;
            }
            std::cout << "N,a,value\n";
            for (auto& t : ts) std::cout << t.N << "," << t.a.get_str() << "," << to_string(t.value) << "\n";
            std::cout << "MATCHES eigenform λ: " << (match ? "true" : "false") << "\n";
            return 0;
        };
    });

    // euler-factor
    auto* c_euler = app.add_subcommand("euler-factor", "local standard L-factor of the lift at p");
    c_euler->add_option("--n", n, "n")->required();
    c_euler->add_option("--l", l, "weight l")->required();
    c_euler->add_option("--p", p, "prime")->required();
    c_euler->callback([&] {
        action = [&] {
            LiftContext ctx(n, l);
            attach_eigenform(ctx, rc);
            auto E = euler_factor_standard(ctx, p);
            bool newton = euler_factor_newton(ctx, p) == E.poly;
            bool dual = euler_factor_self_dual(E);
            if (rc.format == "csv") {
                std::cout << "i,coeff\n";
                for (int i = 0; i <= E.degree; ++i) std::cout << i << "," << E.poly.coeff(i).str() << "\n";
                return 0;
            }
            json c = json::array();
            for (int i = 0; i <= E.degree; ++i) c.push_back(E.poly.coeff(i).str());
            emit({{"n", n}, {"l", l}, {"k", ctx.k}, {"p", p}, {"variable", "T = p^-s"}, {"degree", E.degree},
                  {"coeffs", c}, {"self_dual", dual}, {"newton_agrees", newton}});
            return 0;
        };
    });

    // bessel
    int v = 0;
    double y = 1;
    auto* c_bes = app.add_subcommand("bessel", "K_v(y) by certified quadrature");
    c_bes->add_option("--v", v, "order")->required();
    c_bes->add_option("--y", y, "argument > 0")->required();
    c_bes->callback([&] {
        action = [&] {
            double K = bessel_k(v, y, rc.quad);
            if (rc.format == "csv")
                std::cout << "v,y,K\n" << v << "," << g17(y) << "," << g17(K) << "\n";
            else
                emit({{"v", v}, {"y", y}, {"K", K}});
            return 0;
        };
    });

    // whittaker
    WhittakerPoint P{1, 1, 1, 0, 0, 0};
    std::string ordering = "xplus";
    bool sqrt2 = false;
    auto* c_wh = app.add_subcommand("whittaker", "vector-valued Whittaker profile at one eta");
    c_wh->add_option("--l", l, "l >= 1")->required();
    c_wh->add_option("--a", P.a, "a");
    c_wh->add_option("--S", P.S, "S, aS > 0");
    c_wh->add_option("--t", P.t, "t > 0");
    c_wh->add_option("--x1", P.x1, "x_1");
    c_wh->add_option("--xn", P.xn, "x_n");
    c_wh->add_option("--xprime-norm", P.xprime_norm, "(x', x') >= 0");
    c_wh->add_option("--ordering", ordering, "xplus or xminus")->check(CLI::IsMember({"xplus", "xminus"}));
    c_wh->add_flag("--sqrt2", sqrt2, "scale u by sqrt 2");
    c_wh->callback([&] {
        action = [&] {
            auto W = whittaker_profile(l, P, rc.quad, sqrt2);
            auto o = ordering == "xplus" ? XYOrdering::XPlus : XYOrdering::XMinus;
            auto X = W.x_coeffs(o);
            if (rc.format == "csv") {
                std::cout << "v,re,im,abs\n";
                for (int w = -l; w <= l; ++w) {
                    auto z = W.component(w);
                    std::cout << w << "," << g17(z.real()) << "," << g17(z.imag()) << "," << g17(std::abs(z)) << "\n";
                }
                return 0;
            }
            json comp = json::array(), xc = json::array();
            for (int w = -l; w <= l; ++w) {
                auto z = W.component(w);
                comp.push_back({{"v", w}, {"re", unsign_zero(z.real())}, {"im", unsign_zero(z.imag())}, {"abs", std::abs(z)}});
            }
            for (int jx = 0; jx <= 2 * l; ++jx) xc.push_back({{"x_power", jx}, {"re", unsign_zero(X[jx].real())}, {"im", unsign_zero(X[jx].imag())}});
            emit({{"l", l}, {"u", {unsign_zero(W.u.real()), unsign_zero(W.u.imag())}}, {"sqrt2", sqrt2}, {"components", comp},
                  {"ordering", ordering_name(o)}, {"x_coeffs", xc}});
            return 0;
        };
    });

    // appendix-verify
    AppendixCheckOptions ao;
    auto* c_app = app.add_subcommand("appendix-verify", "numeric checks on the archimedean integrals");
    c_app->add_option("--step", ao.h, "finite-difference step")->check(CLI::PositiveNumber);
    c_app->add_option("--rmax", ao.rmax, "grid r = 0..rmax")->check(CLI::Range(0, 3));
    c_app->callback([&] {
        action = [&] {
            ao.cfg = rc.quad;
            std::cout << appendix_csv_header() << "\n";
            int fails = 0;
            for (auto& r : appendix_checks(ao)) {
                std::cout << appendix_csv(r) << "\n";
                fails += !r.pass;
            }
            return fails ? 1 : 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    try {
        rc.validate();
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroQ& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const MissingC& e) {
        std::cerr << "MissingC: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "BudgetExceeded: " << e.what() << "\n";
        return 2;
    } catch (const InexactDivision& e) {
        std::cerr << "InexactDivision: " << e.what() << "\n";
        return 3;
    } catch (const NotSymmetric& e) {
        std::cerr << "NotSymmetric: " << e.what() << "\n";
        return 3;
    } catch (const NonIntegralResult& e) {
        std::cerr << "NonIntegralResult: " << e.what() << "\n";
        return 3;
    } catch (const NonIntegralCoefficient& e) {
        std::cerr << "NonIntegralCoefficient: " << e.what() << "\n";
        return 3;
    } catch (const NonConvergence& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
