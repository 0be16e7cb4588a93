// Command-line driver: autgroup, search, verify, selftest.
// Exit codes: 0 all checks pass, 1 verification failures, 2 usage or schema
// errors.

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "cyclotwist/pipeline.hpp"

using namespace cyclotwist;

namespace {

TrivializeRoute parse_route(const std::string& s) {
    if (s == "conic") return TrivializeRoute::Conic;
    if (s == "norm") return TrivializeRoute::CyclicNorm;
    if (s == "auto") return TrivializeRoute::Auto;
    throw CLI::ValidationError("--route must be auto, conic or norm");
}

std::vector<unsigned long> parse_gens(const std::string& csv) {
    std::vector<unsigned long> out;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoul(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

int run_autgroup(const std::string& fixture_path, unsigned long ambient, bool as_json,
                 long precision) {
    CurveFixture fx = ingest_fixture(fixture_path, precision);
    unsigned long N = ambient ? ambient : fx.level();
    CycloField F = CycloField::get(N);
    RatFunc pi = fx.pi_gamma.field() == F ? fx.pi_gamma : embed(fx.pi_gamma, F);
    auto aut = aut_group(pi);
    if (as_json) {
        json out;
        out["fixture"] = fx.label;
        out["ambient"] = N;
        out["order"] = aut.size();
        out["elements"] = json::array();
        for (const auto& g : aut) out["elements"].push_back(mobius_to_json(g));
        std::cout << out.dump(1) << "\n";
    } else {
        std::cout << "Aut(" << fx.label << ", ambient K_" << N << "): order " << aut.size() << "\n";
        for (const auto& g : aut) std::cout << "  " << g.canonical().to_string() << "\n";
    }
    return 0;
}

int run_search(const std::string& fixture_path, const SearchOptions& opts,
               const std::string& out_path, bool as_json) {
    CurveFixture fx = ingest_fixture(fixture_path, opts.precision);
    SearchResult res = search(fx, opts);
    json doc = search_result_to_json(res);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << doc.dump(1) << "\n";
    }
    if (as_json || out_path.empty()) std::cout << doc.dump(1) << "\n";
    if (!as_json) {
        std::cerr << "fixture " << fx.label << ": " << res.records.size() << " record(s), b = "
                  << res.b << ", modulus " << res.modulus
                  << (res.aut_stable ? "" : " [aut grew with the conductor]") << "\n";
    }
    return 0;
}

int run_verify(const std::string& records_path, const std::string& fixtures_dir, bool as_json,
               long precision) {
    std::ifstream in(records_path);
    if (!in) throw SchemaError("cannot open records file " + records_path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("records: ") + e.what());
    }
    auto records = records_from_json(doc);
    auto fixtures = load_fixture_dir(fixtures_dir, precision);
    VerifyReport rep = verify(records, fixtures);
    if (as_json) {
        json out = json::array();
        for (const auto& l : rep.lines)
            out.push_back({{"record", l.record},
                           {"check", l.check},
                           {"pass", l.pass},
                           {"detail", l.detail}});
        std::cout << out.dump(1) << "\n";
    } else {
        for (const auto& l : rep.lines)
            std::cout << (l.pass ? "PASS " : "FAIL ") << l.record << " " << l.check
                      << (l.detail.empty() ? "" : "  [" + l.detail + "]") << "\n";
        std::cout << (rep.ok() ? "verify: all checks passed\n" : "verify: FAILURES PRESENT\n");
    }
    return rep.ok() ? 0 : 1;
}

// Compact property sweep across the library; exercised by `cyclotwist
// selftest` and the packaging smoke test.
int run_selftest(bool as_json) {
    struct Step {
        std::string name;
        bool pass;
    };
    std::vector<Step> steps;
    auto step = [&](const std::string& name, auto&& body) {
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception&) {
            ok = false;
        }
        steps.push_back({name, ok});
    };

    step("cyclotomic product identity", [] {
        for (unsigned long N : {12ul, 30ul, 45ul}) {
            std::vector<Rat> prod = {Rat(1)};
            for (unsigned long d : divisors_of(N)) {
                auto phi = cyclotomic_polynomial(d);
                std::vector<Rat> next(prod.size() + phi.size() - 1, Rat(0));
                for (std::size_t i = 0; i < prod.size(); ++i)
                    for (std::size_t j = 0; j < phi.size(); ++j) next[i + j] += prod[i] * phi[j];
                prod = std::move(next);
            }
            if (prod.size() != N + 1 || prod[0] != -1 || prod[N] != 1) return false;
            for (std::size_t i = 1; i < N; ++i)
                if (prod[i] != 0) return false;
        }
        return true;
    });
    step("galois action is a ring homomorphism", [] {
        CycloField k9 = CycloField::get(9);
        std::mt19937 rng(1);
        std::uniform_int_distribution<long> d(-3, 3);
        for (int i = 0; i < 25; ++i) {
            std::vector<Rat> c1(k9.degree()), c2(k9.degree());
            for (auto& x : c1) x = Rat(d(rng));
            for (auto& x : c2) x = Rat(d(rng));
            CycloElem a(k9, c1), b(k9, c2);
            GaloisAut s{2};
            if (apply_aut(s, a * b) != apply_aut(s, a) * apply_aut(s, b)) return false;
            if (apply_aut(s, a + b) != apply_aut(s, a) + apply_aut(s, b)) return false;
        }
        return true;
    });
    step("j-expansion head", [] {
        CycloField q = CycloField::get(1);
        LaurentSeries j = j_expansion(q, 3);
        return j.coeff(-1) == CycloElem::one(q) &&
               j.coeff(0) == CycloElem::from_rational(q, Rat(744)) &&
               j.coeff(1) == CycloElem::from_rational(q, Rat(196884)) &&
               j.coeff(2) == CycloElem::from_rational(q, Rat(21493760));
    });
    step("mobius equation solver on the cube map", [] {
        CycloField k9 = CycloField::get(9);
        RatFunc pi(Poly::monomial(k9, CycloElem::one(k9), 3),
                   Poly::constant(k9, CycloElem::one(k9)));
        return aut_group(pi).size() == 3;
    });
    step("hilbert 90 round trip", [] {
        CycloField k5 = CycloField::get(5);
        GalGroup G = galois_group(k5, rational_subfield(k5));
        SqMat A0(k5, 2,
                 {CycloElem::zeta(k5), CycloElem::one(k5), CycloElem::zero(k5), CycloElem::one(k5)});
        MatrixCocycle psi;
        psi.group = G;
        SqMat Ai = A0.inverse();
        for (unsigned long d : G.elements) psi.values.emplace(d, Ai * apply_aut(GaloisAut{d}, A0));
        SqMat A = hilbert90(psi);
        for (unsigned long d : G.elements)
            if (!(A.inverse() * apply_aut(GaloisAut{d}, A) == psi.at(d))) return false;
        return true;
    });
    step("phi transfer preserves Q0", [] {
        CycloField k8 = CycloField::get(8);
        Mobius g(CycloElem::zeta(k8), CycloElem::one(k8), CycloElem::one(k8),
                 CycloElem::from_rational(k8, Rat(2)));
        SqMat m = phi_transfer(g);
        return m.det() == CycloElem::one(k8) && m.transpose() * q0_gram(k8) * m == q0_gram(k8);
    });
    step("legendre decision matches small search", [] {
        CycloField q = CycloField::get(1);
        auto form = [&](long a, long b, long c) {
            SqMat g(q, 3);
            g.at(0, 0) = CycloElem::from_rational(q, Rat(a));
            g.at(1, 1) = CycloElem::from_rational(q, Rat(b));
            g.at(2, 2) = CycloElem::from_rational(q, Rat(c));
            return ConicForm{g, rational_subfield(q)};
        };
        return has_point_over_Q(form(1, 1, -1)).solvable() &&
               !has_point_over_Q(form(1, 1, 1)).solvable() &&
               !has_point_over_Q(form(1, 1, -3)).solvable() &&
               has_point_over_Q(form(2, 3, -5)).solvable();
    });
    step("trivialization round trip over K_8/Q", [] {
        CycloField k8 = CycloField::get(8);
        GalGroup G = galois_group(k8, rational_subfield(k8));
        Cocycle z = Cocycle::coboundary(G, Mobius::scaling(CycloElem::zeta(k8)));
        auto out = trivialize_cocycle(z);
        if (!out.trivialized()) return false;
        Mobius A = *out.trivializer;
        for (unsigned long d : G.elements)
            if (!projectively_equal(z.at(d), A.inverse() * apply_aut(GaloisAut{d}, A))) return false;
        return true;
    });

    bool all = true;
    for (const auto& s : steps) all = all && s.pass;
    if (as_json) {
        json out = json::array();
        for (const auto& s : steps) out.push_back({{"step", s.name}, {"pass", s.pass}});
        std::cout << out.dump(1) << "\n";
    } else {
        for (const auto& s : steps)
            std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << "\n";
        std::cout << (all ? "selftest: ok\n" : "selftest: FAILURES\n");
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclotwist: twists of genus-0 curve covers over cyclotomic subfields"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    auto* autgroup = app.add_subcommand("autgroup", "automorphism group of a fixture's map");
    std::string fixture_path;
    unsigned long ambient = 0;
    long precision = 8;
    autgroup->add_option("fixture", fixture_path, "fixture JSON file")->required();
    autgroup->add_option("--ambient", ambient, "ambient conductor M (default: the fixture level)");
    autgroup->add_option("--precision", precision, "q-expansion check depth at ingest");

    auto* search_cmd = app.add_subcommand("search", "find all twists over proper subfields");
    std::string route_str = "auto", out_path, subfield_csv;
    SearchOptions sopts;
    search_cmd->add_option("fixture", fixture_path, "fixture JSON file")->required();
    search_cmd->add_option("--route", route_str, "trivialization route: auto|conic|norm");
    search_cmd->add_option("--budget", sopts.point_budget, "point/norm search budget");
    search_cmd->add_option("--subfield", subfield_csv, "subgroup generators (comma separated)");
    search_cmd->add_option("--out", out_path, "write the result JSON here");
    search_cmd->add_option("--precision", sopts.precision, "q-expansion check depth");
    search_cmd->add_option("--seed", sopts.seed, "probe sequence offset");
    search_cmd->add_option("--workers", sopts.workers, "worker thread count");

    auto* verify_cmd = app.add_subcommand("verify", "re-check twist records against fixtures");
    std::string records_path, fixtures_dir;
    verify_cmd->add_option("records", records_path, "records JSON file")->required();
    verify_cmd->add_option("--fixtures", fixtures_dir, "fixture directory")->required();
    verify_cmd->add_option("--precision", precision, "q-expansion check depth at ingest");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in property sweep");
    (void)selftest_cmd;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("autgroup")) return run_autgroup(fixture_path, ambient, as_json, precision);
        if (app.got_subcommand("search")) {
            sopts.route = parse_route(route_str);
            sopts.norm_budget = std::max<std::size_t>(sopts.norm_budget, sopts.point_budget / 10);
            if (!subfield_csv.empty()) sopts.subfield = parse_gens(subfield_csv);
            return run_search(fixture_path, sopts, out_path, as_json);
        }
        if (app.got_subcommand("verify")) return run_verify(records_path, fixtures_dir, as_json, precision);
        if (app.got_subcommand("selftest")) return run_selftest(as_json);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "bad input data: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
