#include "crnf/io.hpp"

#include "crnf/error.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace crnf::io {

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what)
{
    throw ParseError(where + ": " + what);
}

const Json &member(const Json &j, const char *key, const std::string &where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(where, std::string("missing key \"") + key + "\"");
    }
    return *it;
}

int integer_member(const Json &j, const char *key, const std::string &where, int lo, int hi)
{
    const Json &v = member(j, key, where);
    const std::string at = where + "." + key;
    if (!v.is_number_integer()) {
        fail(at, "expected an integer");
    }
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
        fail(at, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
}

const Json &array_member(const Json &j, const char *key, const std::string &where)
{
    const Json &v = member(j, key, where);
    if (!v.is_array()) {
        fail(where + "." + key, "expected an array");
    }
    return v;
}

std::vector<int> exponents(const Json &j, const char *key, int n_vars, const std::string &where)
{
    const Json &arr = array_member(j, key, where);
    const std::string at = where + "." + key;
    if (static_cast<int>(arr.size()) != n_vars) {
        fail(at, "expected " + std::to_string(n_vars) + " exponents, got " + std::to_string(arr.size()));
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto &e = arr[i];
        if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() > 255) {
            fail(at + "[" + std::to_string(i) + "]", "expected an exponent in [0, 255]");
        }
        out.push_back(e.get<int>());
    }
    return out;
}

Rational rational_member(const Json &j, const char *key, const std::string &where)
{
    const Json &v = member(j, key, where);
    const std::string at = where + "." + key;
    if (!v.is_string()) {
        fail(at, "expected a rational string \"p/q\"");
    }
    return parse_rational(v.get<std::string>(), at);
}

std::string index_path(const std::string &base, const char *key, std::size_t i)
{
    return base + "." + key + "[" + std::to_string(i) + "]";
}

std::vector<PurePoly> components_from_json(const Json &j, int n_vars, int degree, const std::string &where)
{
    const Json &arr = array_member(j, "components", where);
    if (static_cast<int>(arr.size()) != n_vars) {
        fail(where + ".components", "expected " + std::to_string(n_vars) + " components");
    }
    std::vector<PurePoly> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(monomials_from_json(arr[i], n_vars, {degree, 0}, index_path(where, "components", i)));
    }
    return out;
}

} // namespace

Json coeff_to_json(const GaussCoeff &c)
{
    return Json{{"re", to_string(c.re)}, {"im", to_string(c.im)}};
}

GaussCoeff coeff_from_json(const Json &j, const std::string &where)
{
    return {rational_member(j, "re", where), rational_member(j, "im", where)};
}

Json monomials_to_json(const BihomPoly &p)
{
    Json out = Json::array();
    for (const auto &t : p.terms()) {
        Json e;
        e["dz"] = t.mono.dz_vector(p.n_vars());
        e["dzb"] = t.mono.dzb_vector(p.n_vars());
        e["re"] = to_string(t.coeff.re);
        e["im"] = to_string(t.coeff.im);
        out.push_back(std::move(e));
    }
    return out;
}

BihomPoly monomials_from_json(const Json &j, int n_vars, Bidegree bidegree, const std::string &where)
{
    if (!j.is_array()) {
        fail(where, "expected an array of monomials");
    }
    std::vector<Term> terms;
    std::set<Monomial, bool (*)(const Monomial &, const Monomial &)> seen(lex_before);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        const auto dz = exponents(j[i], "dz", n_vars, at);
        const auto dzb = exponents(j[i], "dzb", n_vars, at);
        Monomial mono(dz, dzb);
        if (mono.holo_degree() != bidegree.m || mono.anti_degree() != bidegree.n) {
            fail(at, "monomial of bidegree (" + std::to_string(mono.holo_degree()) + "," +
                         std::to_string(mono.anti_degree()) + ") in a part of bidegree (" +
                         std::to_string(bidegree.m) + "," + std::to_string(bidegree.n) + ")");
        }
        if (!seen.insert(mono).second) {
            fail(at, "duplicate monomial");
        }
        terms.push_back({mono, coeff_from_json(j[i], at)});
    }
    return BihomPoly::from_terms(n_vars, bidegree, std::move(terms));
}

Json manifold_to_json(const Manifold &m)
{
    Json out;
    out["n_vars"] = m.n_vars();
    out["degree"] = m.max_degree();
    Json terms = Json::array();
    for (const auto &[bd, p] : m.phi().parts()) {
        terms.push_back(Json{{"m", bd.m}, {"n", bd.n}, {"monomials", monomials_to_json(p)}});
    }
    out["terms"] = std::move(terms);
    return out;
}

Manifold manifold_from_json(const Json &j)
{
    const std::string root = "manifold";
    const int n_vars = integer_member(j, "n_vars", root, 1, Monomial::kMaxVars - 1);
    const int degree = integer_member(j, "degree", root, 0, 255);
    const Json &terms = array_member(j, "terms", root);
    MixedSeries phi(n_vars, degree);
    std::set<Bidegree> parts;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string at = index_path(root, "terms", i);
        const int m = integer_member(terms[i], "m", at, 0, 255);
        const int n = integer_member(terms[i], "n", at, 0, 255);
        if (m + n < 3) {
            fail(at, "part of bidegree (" + std::to_string(m) + "," + std::to_string(n) +
                         ") has degree below 3");
        }
        if (m + n > degree) {
            fail(at, "part of degree " + std::to_string(m + n) + " exceeds the document degree " +
                         std::to_string(degree));
        }
        if (!parts.insert({m, n}).second) {
            fail(at, "duplicate part");
        }
        phi.add(monomials_from_json(member(terms[i], "monomials", at), n_vars, {m, n}, at + ".monomials"));
    }
    return Manifold(std::move(phi));
}

Json map_to_json(const FormalMap &t)
{
    Json out;
    out["n_vars"] = t.n_vars();
    out["max_normal_weight"] = t.max_normal_weight();
    Json f = Json::array();
    for (const auto &[key, comps] : t.F()) {
        Json cs = Json::array();
        for (const auto &c : comps) {
            cs.push_back(monomials_to_json(c));
        }
        f.push_back(Json{{"m", key.first}, {"n", key.second}, {"components", std::move(cs)}});
    }
    Json g = Json::array();
    for (const auto &[key, c] : t.G()) {
        g.push_back(Json{{"m", key.first}, {"n", key.second}, {"monomials", monomials_to_json(c)}});
    }
    out["F"] = std::move(f);
    out["G"] = std::move(g);
    return out;
}

FormalMap map_from_json(const Json &j)
{
    const std::string root = "map";
    const int n_vars = integer_member(j, "n_vars", root, 1, Monomial::kMaxVars - 1);
    const int weight = integer_member(j, "max_normal_weight", root, 2, 255);
    FormalMap t(n_vars, weight);
    std::set<MapKey> seen_f;
    const Json &f = array_member(j, "F", root);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string at = index_path(root, "F", i);
        const int m = integer_member(f[i], "m", at, 0, 255);
        const int n = integer_member(f[i], "n", at, 0, 255);
        if (!seen_f.insert({m, n}).second) {
            fail(at, "duplicate coefficient");
        }
        t.set_F(m, n, components_from_json(f[i], n_vars, m, at));
    }
    std::set<MapKey> seen_g;
    const Json &g = array_member(j, "G", root);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string at = index_path(root, "G", i);
        const int m = integer_member(g[i], "m", at, 0, 255);
        const int n = integer_member(g[i], "n", at, 0, 255);
        if (!seen_g.insert({m, n}).second) {
            fail(at, "duplicate coefficient");
        }
        t.set_G(m, n, monomials_from_json(member(g[i], "monomials", at), n_vars, {m, 0}, at + ".monomials"));
    }
    // Documents written without the identity terms are accepted as well.
    if (!seen_f.contains({1, 0})) {
        t.set_F(1, 0, FormalMap::identity(n_vars, weight).F_at(1, 0));
    }
    if (!seen_g.contains({0, 1})) {
        t.set_G(0, 1, BihomPoly::constant(n_vars, GaussCoeff(1)));
    }
    try {
        t.validate();
    } catch (const DomainError &e) {
        fail(root, e.what());
    }
    return t;
}

Json invariants_to_json(const InvariantData &inv)
{
    Json out;
    out["s"] = inv.s ? Json(*inv.s) : Json(nullptr);
    out["delta"] = monomials_to_json(inv.delta);
    Json partials = Json::array();
    for (const auto &p : inv.delta_partials) {
        partials.push_back(monomials_to_json(p));
    }
    out["delta_partials"] = std::move(partials);
    out["nondegenerate"] = inv.nondegenerate;
    if (inv.witness.empty()) {
        out["witness"] = nullptr;
    } else {
        Json w = Json::array();
        for (const auto &l : inv.witness) {
            w.push_back(monomials_to_json(l));
        }
        out["witness"] = std::move(w);
    }
    return out;
}

Json residuals_to_json(const ResidualReport &r)
{
    Json out = Json::array();
    for (const auto &e : r.entries) {
        Json j;
        j["kind"] = std::string(residual_kind_name(e.kind));
        j["m"] = e.bidegree.m;
        j["n"] = e.bidegree.n;
        if (e.kind == Residual::Kind::FischerEven || e.kind == Residual::Kind::FischerOdd) {
            j["t"] = e.t;
        }
        if (e.kind == Residual::Kind::FischerOdd) {
            j["k"] = e.k;
        }
        j["zero"] = e.value.is_zero();
        j["value"] = monomials_to_json(e.value);
        out.push_back(std::move(j));
    }
    return out;
}

Json solver_log_to_json(const std::vector<SolverLogEntry> &log)
{
    Json out = Json::array();
    for (const auto &e : log) {
        out.push_back(Json{{"degree", e.degree},
                           {"parity", e.parity == Parity::Even ? "even" : "odd"},
                           {"t", e.t},
                           {"dimension", e.dimension}});
    }
    return out;
}

Json report_to_json(const ReportParts &parts)
{
    Json out;
    out["status"] = parts.status;
    out["invariants"] = parts.invariants ? invariants_to_json(*parts.invariants) : Json(nullptr);
    out["map"] = parts.map ? map_to_json(*parts.map) : Json(nullptr);
    out["manifold"] = parts.manifold ? manifold_to_json(*parts.manifold) : Json(nullptr);
    out["residuals"] = parts.residuals ? residuals_to_json(*parts.residuals) : Json(nullptr);
    out["solver_log"] = parts.solver_log ? solver_log_to_json(*parts.solver_log) : Json(nullptr);
    return out;
}

Json read_json_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path &path, const std::string &text)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out << text;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename onto " + path.string());
    }
}

} // namespace crnf::io
