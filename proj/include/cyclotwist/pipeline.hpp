#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cyclotwist/serialize.hpp"
#include "cyclotwist/trivialize.hpp"

namespace cyclotwist {

/// A genus-0 curve-with-map fixture: the label is an opaque catalogue string,
/// pi_gamma lives over K_{p^n}, and the optional hauptmodul q-expansion lets
/// ingestion re-check pi_gamma(h) = j against the computed j-expansion.
struct CurveFixture {
    std::string label;
    unsigned long p = 0;
    unsigned long n = 0;
    RatFunc pi_gamma;
    std::optional<LaurentSeries> hauptmodul;
    std::string provenance;

    unsigned long level() const {
        unsigned long l = 1;
        for (unsigned long i = 0; i < n; ++i) l *= p;
        return l;
    }
};

inline CurveFixture fixture_from_json(const json& j, long check_precision = 8) {
    for (const char* k : {"label", "p", "n", "pi_gamma"})
        if (!j.contains(k)) throw SchemaError(std::string("fixture: missing field ") + k);
    CurveFixture fx;
    fx.label = j.at("label").get<std::string>();
    fx.p = j.at("p").get<unsigned long>();
    fx.n = j.at("n").get<unsigned long>();
    if (!is_prime_ul(fx.p)) throw SchemaError("fixture: p is not prime");
    if (fx.n < 1) throw SchemaError("fixture: n must be positive");
    fx.pi_gamma = ratfunc_from_json(j.at("pi_gamma"));
    if (j.contains("provenance")) fx.provenance = j.at("provenance").get<std::string>();

    if (fx.pi_gamma.field().conductor() != fx.level())
        throw InvariantViolation("fixture " + fx.label + ": pi_gamma conductor " +
                                 std::to_string(fx.pi_gamma.field().conductor()) +
                                 " does not match level " + std::to_string(fx.level()));
    if (fx.pi_gamma.degree() < 2)
        throw InvariantViolation("fixture " + fx.label + ": pi_gamma must have degree >= 2");

    if (j.contains("hauptmodul") && !j.at("hauptmodul").is_null()) {
        LaurentSeries h = series_from_json(j.at("hauptmodul"));
        if (h.field().conductor() != fx.level())
            throw InvariantViolation("fixture " + fx.label + ": hauptmodul conductor mismatch");
        LaurentSeries comp = series_compose(fx.pi_gamma, h);
        long w = comp.width();
        LaurentSeries jser = j_expansion(fx.pi_gamma.field(), check_precision + 1).with_width(w);
        long lo = std::min(comp.valuation(), jser.valuation());
        long hi = std::min({comp.precision(), jser.precision(), (check_precision + 1) * w});
        if (hi < 2 * w + 1)
            throw InvariantViolation("fixture " + fx.label +
                                     ": hauptmodul precision too low to check through q^2");
        for (long e = lo; e < hi; ++e)
            if (comp.coeff(e) != jser.coeff(e))
                throw InvariantViolation("fixture " + fx.label +
                                         ": j-expansion mismatch at exponent " + std::to_string(e) +
                                         "/" + std::to_string(w));
        fx.hauptmodul = std::move(h);
    }
    return fx;
}

inline json fixture_to_json(const CurveFixture& fx) {
    json j{{"label", fx.label},
           {"p", fx.p},
           {"n", fx.n},
           {"pi_gamma", ratfunc_to_json(fx.pi_gamma)},
           {"provenance", fx.provenance}};
    if (fx.hauptmodul) j["hauptmodul"] = series_to_json(*fx.hauptmodul);
    return j;
}

inline CurveFixture ingest_fixture(const std::string& path, long check_precision = 8) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open fixture file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("fixture " + path + ": " + e.what());
    }
    return fixture_from_json(j, check_precision);
}

/// One twist found (or obstructed) over a field K: either a matrix A with
/// pi_Gamma(A(t)) defined over K, or the conic describing the twist when no
/// trivializer was produced.
struct TwistRecord {
    std::string label;
    std::string fixture;
    SubfieldSpec field;  // presented inside K_(promoted level)
    std::optional<Mobius> A;
    std::optional<ConicForm> conic;
    std::string status;  // "found" | "obstruction" | "inconclusive"
    std::string route;
    std::string notes;
};

inline json record_to_json(const TwistRecord& r) {
    json j{{"label", r.label},
           {"fixture", r.fixture},
           {"field", subfield_to_json(r.field)},
           {"status", r.status},
           {"route", r.route}};
    if (r.A) j["A"] = mobius_to_json(*r.A);
    if (r.conic) j["conic"] = conic_to_json(*r.conic);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline TwistRecord record_from_json(const json& j) {
    for (const char* k : {"label", "fixture", "field", "status"})
        if (!j.contains(k)) throw SchemaError(std::string("record: missing field ") + k);
    TwistRecord r;
    r.label = j.at("label").get<std::string>();
    r.fixture = j.at("fixture").get<std::string>();
    r.field = subfield_from_json(j.at("field"));
    r.status = j.at("status").get<std::string>();
    if (j.contains("route")) r.route = j.at("route").get<std::string>();
    if (j.contains("notes")) r.notes = j.at("notes").get<std::string>();
    if (j.contains("A")) r.A = mobius_from_json(j.at("A"));
    if (j.contains("conic")) r.conic = conic_from_json(j.at("conic"));
    return r;
}

struct SearchOptions {
    TrivializeRoute route = TrivializeRoute::Auto;
    std::size_t norm_budget = 20000;
    std::size_t point_budget = 200000;
    long precision = 8;   // q-expansion check depth at ingest time
    std::size_t seed = 0; // probe sequence offset
    int workers = 1;
    std::optional<std::vector<unsigned long>> subfield; // generator filter
};

struct SearchResult {
    std::string fixture;
    unsigned long promoted_level = 0;
    unsigned long b = 1;
    unsigned long modulus = 0; // b * promoted level
    bool aut_stable = true;    // Aut over K_M equals Aut over K_(p^n)
    std::string dedup = "K-isomorphism";
    std::vector<TwistRecord> records;
};

inline json search_result_to_json(const SearchResult& s) {
    json records = json::array();
    for (const auto& r : s.records) records.push_back(record_to_json(r));
    return json{{"engine",
                 {{"name", "cyclotwist"},
                  {"dedup", s.dedup},
                  {"aut_stable", s.aut_stable},
                  {"b", s.b},
                  {"modulus", s.modulus},
                  {"promoted_level", s.promoted_level}}},
                {"fixture", s.fixture},
                {"records", records}};
}

// Present K inside a larger cyclotomic field when needed.
inline SubfieldSpec lift_to(const SubfieldSpec& K, const CycloField& FM) {
    return K.parent == FM ? K : lift_subfield(K, FM);
}

namespace detail {

inline bool mobius_in_subfield(const Mobius& g, const SubfieldSpec& K) {
    Mobius c = g.canonical();
    return is_in_subfield(c.a(), K) && is_in_subfield(c.b(), K) && is_in_subfield(c.c(), K) &&
           is_in_subfield(c.d(), K);
}

// K-isomorphism of twists: some Mobius with K-coefficients carries one map
// to the other.
inline bool twists_isomorphic_over(const RatFunc& a, const RatFunc& b, const SubfieldSpec& K_lift,
                                   const SolverConfig& cfg) {
    for (const auto& g : solve_mobius_equation(a, b, cfg))
        if (mobius_in_subfield(g, K_lift)) return true;
    return false;
}

} // namespace detail

/// The end-to-end search: sweep the proper subfields K of K_N (level promoted
/// to 8 for levels 2 and 4), enumerate cocycles over Gal(K_{bN}/K), attempt
/// trivialization, and emit one record per K-isomorphism class of twists plus
/// obstruction/inconclusive records for the rest. Output order is canonical,
/// independent of the worker count.
inline SearchResult search(const CurveFixture& fx, const SearchOptions& opts = {}) {
    SearchResult out;
    out.fixture = fx.label;
    unsigned long level = fx.level();
    unsigned long N = (fx.p == 2 && level < 8) ? 8 : level;
    out.promoted_level = N;
    CycloField FN = CycloField::get(N);
    RatFunc piN = fx.pi_gamma.field() == FN ? fx.pi_gamma : embed(fx.pi_gamma, FN);

    SolverConfig scfg;
    scfg.probe_offset = opts.seed;

    std::vector<Mobius> autN = aut_group(piN, scfg);
    LevelBound b = level_bound(autN, fx.p);
    unsigned long M = b.b * N;
    // re-verify that the automorphisms do not grow with the conductor; the
    // bound b is recomputed if they do
    for (int round = 0; round < 3 && M != N; ++round) {
        CycloField FM = CycloField::get(M);
        std::vector<Mobius> autM = aut_group(embed(piN, FM), scfg);
        bool same = autM.size() == autN.size();
        if (same)
            for (const auto& g : autN) {
                bool present = false;
                for (const auto& h : autM)
                    if (projectively_equal(embed(g, FM), h)) present = true;
                if (!present) same = false;
            }
        if (same) break;
        out.aut_stable = false;
        LevelBound b2 = level_bound(autM, fx.p);
        if (b2.b <= b.b) break;
        b = b2;
        M = b.b * N;
    }
    out.b = b.b;
    out.modulus = M;

    std::vector<SubfieldSpec> subfields;
    for (const auto& K : enumerate_subgroups(FN)) {
        if (K.is_Q()) continue; // the paper's scope is K != Q
        if (opts.subfield) {
            SubfieldSpec want = subfield(FN, *opts.subfield);
            if (!(K == want)) continue;
        }
        subfields.push_back(K);
    }

    CycloField FM = CycloField::get(M);
    RatFunc piM = M == N ? piN : embed(piN, FM);

    struct Item {
        TwistRecord rec;
        std::optional<RatFunc> twisted; // for dedup
    };
    auto process_subfield = [&](const SubfieldSpec& K) {
        std::vector<Item> items;
        std::vector<Cocycle> cocycles;
        try {
            cocycles = enumerate_cocycles(piN, K, LevelBound{M / N, fx.p}, scfg);
        } catch (const Error& e) {
            TwistRecord r;
            r.fixture = fx.label;
            r.field = K;
            r.status = "inconclusive";
            r.notes = std::string("cocycle enumeration failed: ") + e.what();
            items.push_back({std::move(r), std::nullopt});
            return items;
        }
        for (const auto& z : cocycles) {
            TwistRecord r;
            r.fixture = fx.label;
            r.field = K;
            try {
                TrivializeConfig tcfg;
                tcfg.route = opts.route;
                tcfg.norm_budget = opts.norm_budget;
                tcfg.point_budget = opts.point_budget;
                TrivializeOutcome o = trivialize_cocycle(z, tcfg);
                r.route = o.route;
                if (o.trivialized()) {
                    Mobius A_rec = o.trivializer->inverse().canonical();
                    RatFunc twisted = compose_mobius(piM, A_rec);
                    if (!coefficients_in(twisted, z.group.fixed))
                        throw Error("twisted map has coefficients outside K");
                    r.A = A_rec;
                    r.status = "found";
                    items.push_back({std::move(r), std::move(twisted)});
                    continue;
                }
                r.conic = o.conic;
                r.status = o.status; // "obstruction" or "inconclusive"
                r.notes = o.insolubility_witness;
            } catch (const Error& e) {
                r.status = "inconclusive";
                r.notes = e.what();
            }
            items.push_back({std::move(r), std::nullopt});
        }
        // de-duplicate the found twists up to K-isomorphism
        std::vector<Item> kept;
        for (auto& it : items) {
            bool dup = false;
            if (it.twisted)
                for (const auto& prev : kept)
                    if (prev.twisted &&
                        detail::twists_isomorphic_over(*prev.twisted, *it.twisted, lift_to(K, FM), scfg))
                        dup = true;
            if (!dup) kept.push_back(std::move(it));
        }
        return kept;
    };

    std::vector<std::vector<Item>> slots(subfields.size());
    int workers = std::max(1, opts.workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (std::size_t i = static_cast<std::size_t>(w); i < subfields.size(); i += workers) {
                try {
                    slots[i] = process_subfield(subfields[i]);
                } catch (const std::exception& e) {
                    TwistRecord r;
                    r.fixture = fx.label;
                    r.field = subfields[i];
                    r.status = "inconclusive";
                    r.notes = std::string("subfield sweep failed: ") + e.what();
                    slots[i] = {{std::move(r), std::nullopt}};
                }
            }
        });
    for (auto& t : pool) t.join();

    std::vector<Item> all;
    for (auto& s : slots)
        for (auto& it : s) all.push_back(std::move(it));
    std::sort(all.begin(), all.end(), [](const Item& x, const Item& y) {
        auto key = [](const Item& it) {
            std::string k = subfield_to_json(it.rec.field).dump();
            k += "|";
            k += it.rec.A ? mobius_to_json(*it.rec.A).dump()
                          : (it.rec.conic ? conic_to_json(*it.rec.conic).dump() : it.rec.notes);
            return k;
        };
        return key(x) < key(y);
    });
    // labels: fixture-<conductor of K><letter>, letters per conductor
    std::map<unsigned long, char> next_letter;
    for (auto& it : all) {
        unsigned long c = subfield_conductor(it.rec.field);
        char& l = next_letter.try_emplace(c, 'a').first->second;
        it.rec.label = fx.label + "-" + std::to_string(c) + std::string(1, l);
        ++l;
        out.records.push_back(std::move(it.rec));
    }
    return out;
}

/// Verification report: one line per check per record, all checks exact.
struct VerifyLine {
    std::string record;
    std::string check;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyLine> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

/// Independent verification of twist records against their fixtures:
/// (1) pi_Gamma(A(t)) has coefficients in K; (2) one orientation of the
/// cocycle associated to A satisfies the twist condition on the whole Galois
/// group; (3) K is a nontrivial subfield of some K_m from the classification
/// list. Conic records are checked for K-rationality and nondegeneracy.
inline VerifyReport verify(const std::vector<TwistRecord>& records,
                           const std::map<std::string, CurveFixture>& fixtures) {
    static const unsigned long kTheoremConductors[] = {3, 5, 7, 9, 8, 11, 13, 16, 25, 27, 32};
    VerifyReport rep;
    for (const auto& r : records) {
        auto push = [&](const std::string& check, bool pass, const std::string& detail = "") {
            rep.lines.push_back({r.label, check, pass, detail});
        };
        auto fit = fixtures.find(r.fixture);
        if (fit == fixtures.end()) {
            push("fixture-known", false, "no fixture named " + r.fixture);
            continue;
        }
        const CurveFixture& fx = fit->second;

        // (3) field membership in the classification list
        {
            bool not_Q = !r.field.is_Q();
            unsigned long cond = subfield_conductor(r.field);
            bool in_list = false;
            for (unsigned long m : kTheoremConductors) in_list = in_list || (m % cond == 0);
            push("field-in-theorem-list", not_Q && in_list,
                 not_Q ? "conductor " + std::to_string(cond) : "K = Q is out of scope");
        }

        if (r.A) {
            const CycloField& FA = r.A->field();
            RatFunc piA = fx.pi_gamma.field() == FA ? fx.pi_gamma : embed(fx.pi_gamma, FA);
            SubfieldSpec K_at_A = lift_to(r.field, FA);
            // (1) the twisted map is defined over K
            bool in_K = false;
            std::string detail1;
            try {
                RatFunc twisted = compose_mobius(piA, *r.A);
                in_K = coefficients_in(twisted, K_at_A);
            } catch (const Error& e) {
                detail1 = e.what();
            }
            push("twisted-map-in-K", in_K, detail1);

            // (2) the associated cocycle satisfies the twist condition; both
            // orientation conventions are tried and the passing one reported
            bool coc_ok = false;
            std::string which;
            try {
                GalGroup G = galois_group(FA, r.field);
                Mobius A = *r.A;
                Mobius Ai = A.inverse();
                struct Variant {
                    const char* name;
                    std::function<Mobius(unsigned long)> value;
                };
                std::vector<Variant> variants = {
                    {"A*s(A)^-1", [&](unsigned long d) { return A * apply_aut(GaloisAut{d}, A).inverse(); }},
                    {"A^-1*s(A)", [&](unsigned long d) { return Ai * apply_aut(GaloisAut{d}, A); }},
                    {"s(A)*A^-1", [&](unsigned long d) { return apply_aut(GaloisAut{d}, A) * Ai; }},
                    {"s(A)^-1*A", [&](unsigned long d) { return apply_aut(GaloisAut{d}, A).inverse() * A; }},
                };
                for (const auto& v : variants) {
                    Cocycle z;
                    z.group = G;
                    for (unsigned long d : G.elements) z.values[d] = v.value(d).canonical();
                    try {
                        z.validate();
                    } catch (const InvalidCocycle&) {
                        continue;
                    }
                    bool eq = true;
                    for (unsigned long d : G.elements)
                        if (apply_aut(GaloisAut{d}, piA) != compose_mobius(piA, z.at(d))) {
                            eq = false;
                            break;
                        }
                    if (eq) {
                        coc_ok = true;
                        which = v.name;
                        break;
                    }
                }
            } catch (const Error& e) {
                which = e.what();
            }
            push("cocycle-condition", coc_ok, which);
        }
        if (r.conic) {
            bool ok = true;
            std::string detail;
            try {
                r.conic->validate();
            } catch (const Error& e) {
                ok = false;
                detail = e.what();
            }
            push("conic-in-K", ok, detail);
        }
        if (!r.A && !r.conic)
            push("payload-present", r.status == "inconclusive",
                 "record carries neither A nor a conic");
    }
    return rep;
}

inline std::vector<TwistRecord> records_from_json(const json& doc) {
    const json& arr = doc.is_array() ? doc : doc.at("records");
    std::vector<TwistRecord> out;
    for (const auto& j : arr) out.push_back(record_from_json(j));
    return out;
}

inline std::map<std::string, CurveFixture> load_fixture_dir(const std::string& dir,
                                                            long check_precision = 8) {
    std::map<std::string, CurveFixture> out;
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
        CurveFixture fx = ingest_fixture(p.string(), check_precision);
        out.emplace(fx.label, std::move(fx));
    }
    return out;
}

} // namespace cyclotwist
