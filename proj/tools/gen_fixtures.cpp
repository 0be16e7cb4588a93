// Builds the vendored curve fixtures from classical modular identities:
//   2A: X_0(2),  pi = (t+256)^3/t^2,  h = (eta(q)/eta(q^2))^24
//   2B: the index-2 level-2 curve,  pi = t^2 + 1728,  h = E6/eta^12 = sqrt(j-1728)
//   3A: X_0(3),  pi = (t+27)(t+243)^3/t^3,  h = (eta(q)/eta(q^3))^12
//   3B: the cube-root-of-j curve,  pi = t^3,  h = gamma_2 = E4/eta^8
// Every fixture is passed back through ingestion, which re-checks
// pi(h) = j against the exact j-expansion before anything is written.

#include <fstream>
#include <iostream>

#include "cyclotwist/pipeline.hpp"

using namespace cyclotwist;

namespace {

std::vector<Rat> mul_trunc(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < r.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// substitute q -> q^k
std::vector<Rat> sub_qk(const std::vector<Rat>& a, unsigned long k) {
    std::vector<Rat> r(a.size(), Rat(0));
    for (std::size_t i = 0; i * k < a.size(); ++i) r[i * k] = a[i];
    return r;
}

RatFunc rational_map(const CycloField& f, std::vector<long> num, std::vector<long> den) {
    auto mk = [&](const std::vector<long>& v) {
        std::vector<CycloElem> c;
        for (long x : v) c.push_back(CycloElem::from_rational(f, Rat(x)));
        return Poly(f, std::move(c));
    };
    return RatFunc(mk(num), mk(den));
}

json fixture_json(const std::string& label, unsigned long p, unsigned long n, const RatFunc& pi,
                  const LaurentSeries& h, const std::string& provenance) {
    json j;
    j["label"] = label;
    j["p"] = p;
    j["n"] = n;
    j["pi_gamma"] = ratfunc_to_json(pi);
    j["hauptmodul"] = series_to_json(h);
    j["provenance"] = provenance;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    std::string out_dir = "data/fixtures";
    std::size_t terms = 24;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--out" && i + 1 < argc) out_dir = argv[++i];
        else if (a == "--terms" && i + 1 < argc) terms = std::stoul(argv[++i]);
    }

    CycloField k2 = CycloField::get(2);
    CycloField k3 = CycloField::get(3);

    std::vector<json> fixtures;

    {
        // 2A: h = q^-1 prod((1-q^n)/(1-q^2n))^24, j = (h+256)^3/h^2
        auto p = qexp::eta_product_pow(24, terms);
        auto q = mul_trunc(p, sub_qk(qexp::eta_product_pow(-24, terms), 2));
        LaurentSeries h = qexp::from_q_integral(k2, q, -1, 1);
        RatFunc pi = rational_map(k2, {16777216, 196608, 768, 1}, {0, 0, 1});
        fixtures.push_back(fixture_json(
            "2A", 2, 1, pi, h,
            "X_0(2): hauptmodul (eta(q)/eta(q^2))^24, classical identity j = (t+256)^3/t^2"));
    }
    {
        // 2B: h = E6/eta^12 = q^-1/2 E6 prod(1-q^n)^-12, h^2 = j - 1728
        auto series = mul_trunc(qexp::eisenstein_e6(terms), qexp::eta_product_pow(-12, terms));
        std::vector<CycloElem> c;
        for (const auto& r : series) {
            c.push_back(CycloElem::from_rational(k2, r));
            c.push_back(CycloElem::zero(k2)); // width 2: integral q-powers only
        }
        c.pop_back();
        long prec = -1 + static_cast<long>(c.size());
        LaurentSeries h(k2, 2, -1, prec, std::move(c));
        RatFunc pi = rational_map(k2, {1728, 0, 1}, {1});
        fixtures.push_back(fixture_json(
            "2B", 2, 1, pi, h,
            "level-2 index-2 curve: hauptmodul E6/eta^12 = sqrt(j-1728), j = t^2 + 1728"));
    }
    {
        // 3A: h = q^-1 prod((1-q^n)/(1-q^3n))^12, j = (h+27)(h+243)^3/h^3
        auto p = qexp::eta_product_pow(12, terms);
        auto q = mul_trunc(p, sub_qk(qexp::eta_product_pow(-12, terms), 3));
        LaurentSeries h = qexp::from_q_integral(k3, q, -1, 1);
        // (t+27)(t+243)^3 = t^4 + 756 t^3 + 196830 t^2 + 19131876 t + 387420489
        RatFunc pi = rational_map(k3, {387420489, 19131876, 196830, 756, 1}, {0, 0, 0, 1});
        fixtures.push_back(fixture_json(
            "3A", 3, 1, pi, h,
            "X_0(3): hauptmodul (eta(q)/eta(q^3))^12, classical identity j = (t+27)(t+243)^3/t^3"));
    }
    {
        // 3B: h = gamma_2 = E4/eta^8 = q^-1/3 E4 prod(1-q^n)^-8, h^3 = j
        auto series = mul_trunc(qexp::eisenstein_e4(terms), qexp::eta_product_pow(-8, terms));
        std::vector<CycloElem> c;
        for (const auto& r : series) {
            c.push_back(CycloElem::from_rational(k3, r));
            c.push_back(CycloElem::zero(k3));
            c.push_back(CycloElem::zero(k3));
        }
        c.pop_back();
        c.pop_back();
        long prec = -1 + static_cast<long>(c.size());
        LaurentSeries h(k3, 3, -1, prec, std::move(c));
        RatFunc pi = rational_map(k3, {0, 0, 0, 1}, {1});
        fixtures.push_back(fixture_json(
            "3B", 3, 1, pi, h,
            "cube root of j: hauptmodul gamma_2 = E4/eta^8, j = t^3"));
    }

    std::filesystem::create_directories(out_dir);
    for (const auto& j : fixtures) {
        CurveFixture fx = fixture_from_json(j, 8); // re-verifies pi(h) = j
        std::string path = out_dir + "/" + fx.label + ".json";
        std::ofstream out(path);
        out << j.dump(1) << "\n";
        std::cout << "wrote " << path << " (pi(h) = j checked)\n";
    }
    return 0;
}
