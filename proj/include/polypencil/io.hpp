#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polypencil/families.hpp"

namespace polypencil {

/// All integers travel as decimal strings so arbitrary precision
/// survives JSON number limits; keys keep insertion order so canonical
/// files round-trip bit-exactly.
using Json = nlohmann::ordered_json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- scalars ----------------------------------------------------------------

inline Json to_json(const Rational& q) {
    return Json::array({numerator_of(q).str(), denominator_of(q).str()});
}

inline Rational parse_rational(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw io_error("rational must be a [num, den] string pair");
    try {
        return make_rational(Int(j[0].get<std::string>()), Int(j[1].get<std::string>()));
    } catch (const std::exception& e) {
        throw io_error(std::string("bad rational: ") + e.what());
    }
}

inline Json to_json(const UniPoly& p) {
    Json out = Json::array();
    for (int d = 0; d <= p.degree(); ++d) out.push_back(to_json(p.coeff(d)));
    return out;
}

inline UniPoly parse_unipoly(const Json& j) {
    if (!j.is_array()) throw io_error("polynomial must be a coefficient array");
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(parse_rational(e));
    return UniPoly(std::move(c));
}

inline Json to_json(const ConstMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ConstMatrix parse_const_matrix(const Json& j, int rows = -1, int cols = -1) {
    if (!j.is_array()) throw io_error("matrix must be an array of rows");
    int r = static_cast<int>(j.size());
    int c = r ? static_cast<int>(j[0].size()) : std::max(cols, 0);
    if (rows >= 0 && r != rows) throw io_error("matrix row count mismatch");
    if (cols >= 0 && r && c != cols) throw io_error("matrix column count mismatch");
    ConstMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(j[static_cast<size_t>(i)].size()) != c)
            throw io_error("ragged matrix rows");
        for (int k = 0; k < c; ++k) m.at(i, k) = parse_rational(j[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    }
    return m;
}

// -- matrices, coefficient-major [degree][row][col] --------------------------

namespace detail {
inline Json coeff_slices(const PolyMatrix& m, int count) {
    Json slices = Json::array();
    for (int d = 0; d < count; ++d) slices.push_back(to_json(m.coefficient(d)));
    return slices;
}

inline PolyMatrix poly_from_slices(const Json& slices, int rows, int cols) {
    PolyMatrix m(rows, cols);
    int d = 0;
    for (const auto& slice : slices) {
        ConstMatrix c = parse_const_matrix(slice, rows, cols);
        m = m + UniPoly::monomial(d) * PolyMatrix(c);
        ++d;
    }
    return m;
}

inline void expect_kind(const Json& j, const std::string& kind) {
    if (!j.is_object() || !j.contains("kind") || j["kind"] != kind)
        throw io_error("expected kind '" + kind + "'");
}
}  // namespace detail

inline Json to_json(const PolyMatrix& m) {
    Json j;
    j["kind"] = "poly_matrix";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["coeffs"] = detail::coeff_slices(m, m.is_zero() ? 1 : m.degree() + 1);
    return j;
}

inline PolyMatrix parse_poly_matrix(const Json& j) {
    detail::expect_kind(j, "poly_matrix");
    return detail::poly_from_slices(j.at("coeffs"), j.at("rows").get<int>(), j.at("cols").get<int>());
}

inline Json to_json(const Pencil& p) {
    Json j;
    j["kind"] = "pencil";
    j["rows"] = p.rows();
    j["cols"] = p.cols();
    j["coeffs"] = Json::array({to_json(p.m0()), to_json(p.m1())});
    return j;
}

inline Pencil parse_pencil(const Json& j) {
    detail::expect_kind(j, "pencil");
    const Json& slices = j.at("coeffs");
    if (slices.size() != 2) throw io_error("pencil needs exactly two coefficient slices");
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    return Pencil(parse_const_matrix(slices[0], rows, cols), parse_const_matrix(slices[1], rows, cols));
}

inline Json to_json(const RatMatrix& m) {
    Json j;
    j["kind"] = "rat_matrix";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            Json entry;
            entry["num"] = to_json(m.at(i, c).num());
            entry["den"] = to_json(m.at(i, c).den());
            row.push_back(std::move(entry));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline RatMatrix parse_rat_matrix(const Json& j) {
    detail::expect_kind(j, "rat_matrix");
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    RatMatrix m(rows, cols);
    const Json& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != rows) throw io_error("entry row count mismatch");
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c) {
            const Json& e = entries[static_cast<size_t>(i)].at(static_cast<size_t>(c));
            m.at(i, c) = RatFunc(parse_unipoly(e.at("num")), parse_unipoly(e.at("den")));
        }
    return m;
}

inline Json to_json(const SystemMatrix& sm) {
    Json j;
    j["kind"] = "system_matrix";
    j["rows"] = sm.matrix().rows();
    j["cols"] = sm.matrix().cols();
    j["n"] = sm.state_size();
    j["layout"] = to_string(sm.layout());
    if (sm.layout() == StateLayout::scattered) {
        j["state_rows"] = sm.state_rows();
        j["state_cols"] = sm.state_cols();
    }
    j["coeffs"] = detail::coeff_slices(sm.matrix(), sm.matrix().is_zero() ? 1 : sm.matrix().degree() + 1);
    return j;
}

inline SystemMatrix parse_system_matrix(const Json& j) {
    detail::expect_kind(j, "system_matrix");
    PolyMatrix s =
        detail::poly_from_slices(j.at("coeffs"), j.at("rows").get<int>(), j.at("cols").get<int>());
    StateLayout layout = layout_from_string(j.at("layout").get<std::string>());
    if (layout == StateLayout::scattered) {
        std::vector<int> sr = j.at("state_rows").get<std::vector<int>>();
        std::vector<int> sc = j.at("state_cols").get<std::vector<int>>();
        return SystemMatrix(std::move(s), std::move(sr), std::move(sc));
    }
    return SystemMatrix(std::move(s), j.at("n").get<int>(), layout);
}

// -- family specs -------------------------------------------------------------

/// Construction input for one linearization family, as stored on disk.
struct FamilySpec {
    std::string family;
    std::optional<PolyMatrix> poly;                   // frobenius
    std::optional<std::vector<ConstMatrix>> coeffs;   // comrade
    std::optional<RecurrenceBasis> basis;             // comrade
    std::optional<CorkSpec> cork;                     // cork
    std::optional<BlockKroneckerSpec> bk;             // blockkron, extblockkron
    std::optional<Realization> realization;           // rational
    std::optional<SystemMatrix> psm;                  // rational
};

inline Json to_json(const FamilySpec& spec) {
    Json j;
    j["kind"] = "family_spec";
    j["family"] = spec.family;
    if (spec.family == "frobenius") {
        j["poly"] = to_json(*spec.poly);
    } else if (spec.family == "comrade") {
        Json cs = Json::array();
        for (const auto& c : *spec.coeffs) cs.push_back(to_json(c));
        j["coeffs"] = std::move(cs);
        auto rl = [](const std::vector<Rational>& v) {
            Json a = Json::array();
            for (const auto& q : v) a.push_back(to_json(q));
            return a;
        };
        j["alphas"] = rl(spec.basis->alphas);
        j["betas"] = rl(spec.basis->betas);
        j["gammas"] = rl(spec.basis->gammas);
    } else if (spec.family == "cork") {
        Json pairs = Json::array();
        for (const auto& [a, b] : spec.cork->coeff_pairs) {
            Json pair;
            pair["A"] = to_json(a);
            pair["B"] = to_json(b);
            pairs.push_back(std::move(pair));
        }
        j["coeff_pairs"] = std::move(pairs);
        j["X"] = to_json(spec.cork->X);
        j["Y"] = to_json(spec.cork->Y);
        Json basis = Json::array();
        for (const auto& p : spec.cork->basis) basis.push_back(to_json(p));
        j["basis"] = std::move(basis);
    } else if (spec.family == "blockkron" || spec.family == "extblockkron") {
        j["eta"] = spec.bk->eta;
        j["eps"] = spec.bk->eps;
        j["p"] = spec.bk->p;
        j["m"] = spec.bk->m;
        j["M0"] = to_json(spec.bk->M.m0());
        j["M1"] = to_json(spec.bk->M.m1());
        if (spec.bk->Yext) j["Y"] = to_json(*spec.bk->Yext);
        if (spec.bk->Zext) j["Z"] = to_json(*spec.bk->Zext);
    } else if (spec.family == "rational") {
        j["A"] = to_json(spec.realization->A);
        j["B"] = to_json(spec.realization->B);
        j["C"] = to_json(spec.realization->C);
        j["psm"] = to_json(*spec.psm);
    } else {
        throw io_error("unknown family '" + spec.family + "'");
    }
    return j;
}

inline FamilySpec parse_family_spec(const Json& j) {
    detail::expect_kind(j, "family_spec");
    FamilySpec spec;
    spec.family = j.at("family").get<std::string>();
    auto rational_list = [](const Json& a) {
        std::vector<Rational> v;
        for (const auto& e : a) v.push_back(parse_rational(e));
        return v;
    };
    if (spec.family == "frobenius") {
        spec.poly = parse_poly_matrix(j.at("poly"));
    } else if (spec.family == "comrade") {
        std::vector<ConstMatrix> cs;
        for (const auto& c : j.at("coeffs")) cs.push_back(parse_const_matrix(c));
        spec.coeffs = std::move(cs);
        RecurrenceBasis basis;
        basis.alphas = rational_list(j.at("alphas"));
        basis.betas = rational_list(j.at("betas"));
        basis.gammas = rational_list(j.at("gammas"));
        spec.basis = std::move(basis);
    } else if (spec.family == "cork") {
        CorkSpec cork;
        for (const auto& pair : j.at("coeff_pairs"))
            cork.coeff_pairs.emplace_back(parse_const_matrix(pair.at("A")),
                                          parse_const_matrix(pair.at("B")));
        cork.X = parse_const_matrix(j.at("X"));
        cork.Y = parse_const_matrix(j.at("Y"));
        for (const auto& p : j.at("basis")) cork.basis.push_back(parse_unipoly(p));
        spec.cork = std::move(cork);
    } else if (spec.family == "blockkron" || spec.family == "extblockkron") {
        BlockKroneckerSpec bk;
        bk.eta = j.at("eta").get<int>();
        bk.eps = j.at("eps").get<int>();
        bk.p = j.at("p").get<int>();
        bk.m = j.at("m").get<int>();
        bk.M = Pencil(parse_const_matrix(j.at("M0")), parse_const_matrix(j.at("M1")));
        if (j.contains("Y")) bk.Yext = parse_const_matrix(j.at("Y"));
        if (j.contains("Z")) bk.Zext = parse_const_matrix(j.at("Z"));
        spec.bk = std::move(bk);
    } else if (spec.family == "rational") {
        Realization real;
        real.A = parse_const_matrix(j.at("A"));
        real.B = parse_const_matrix(j.at("B"));
        real.C = parse_const_matrix(j.at("C"));
        spec.realization = std::move(real);
        spec.psm = parse_system_matrix(j.at("psm"));
    } else {
        throw io_error("unknown family '" + spec.family + "'");
    }
    return spec;
}

struct ConstructResult {
    SystemMatrix sm;
    std::optional<PolyMatrix> induced;  // block Kronecker families report their P
};

inline ConstructResult construct_family(const FamilySpec& spec, bool rev) {
    if (spec.family == "frobenius")
        return {rev ? build_frobenius_rev(*spec.poly) : build_frobenius(*spec.poly), std::nullopt};
    if (spec.family == "comrade")
        return {rev ? build_comrade_rev(*spec.coeffs, *spec.basis)
                    : build_comrade(*spec.coeffs, *spec.basis),
                std::nullopt};
    if (spec.family == "cork")
        return {rev ? build_cork_rev(*spec.cork) : build_cork(*spec.cork), std::nullopt};
    if (spec.family == "blockkron") {
        if (rev) return {build_block_kronecker_rev(*spec.bk), spec.bk->induced_poly()};
        auto [sm, induced] = build_block_kronecker(*spec.bk);
        return {std::move(sm), std::move(induced)};
    }
    if (spec.family == "extblockkron") {
        if (rev) return {build_extended_bk_rev(*spec.bk), spec.bk->induced_poly()};
        auto [sm, induced] = build_extended_bk(*spec.bk);
        return {std::move(sm), std::move(induced)};
    }
    if (spec.family == "rational") {
        if (rev) throw precondition_error("the rational assembly has no reversed partition");
        return {assemble_rational(*spec.realization, *spec.psm), std::nullopt};
    }
    throw io_error("unknown family '" + spec.family + "'");
}

// -- files --------------------------------------------------------------------

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw io_error("parse error in '" + path + "': " + e.what());
    }
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << canonical_dump(j);
}

inline std::string kind_of(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw io_error("matrix file needs a string 'kind'");
    return j["kind"].get<std::string>();
}

/// Reads any matrix-bearing file as a polynomial matrix.
inline PolyMatrix load_as_poly_matrix(const Json& j) {
    std::string kind = kind_of(j);
    if (kind == "poly_matrix") return parse_poly_matrix(j);
    if (kind == "pencil") return parse_pencil(j).to_poly();
    if (kind == "system_matrix") return parse_system_matrix(j).matrix();
    throw io_error("cannot interpret kind '" + kind + "' as a polynomial matrix");
}

}  // namespace polypencil
