#include "scheme_forge/serialize.hpp"

#include "scheme_forge/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace scheme_forge {

namespace {

json rats(std::span<const Rational> v) {
    json out = json::array();
    for (const auto& r : v)
        out.push_back(r.str());
    return out;
}

json matrix(const RatMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(rats(m.row(r)));
    return out;
}

json tensor(const Tensor3& t) {
    json out = json::array();
    for (std::size_t k = 0; k < t.size(); ++k) {
        json layer = json::array();
        for (std::size_t i = 0; i < t.size(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < t.size(); ++j)
                row.push_back(t(k, i, j).str());
            layer.push_back(std::move(row));
        }
        out.push_back(std::move(layer));
    }
    return out;
}

Rational rat(const json& j) {
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        throw Error(ErrorKind::Parse, "expected a rational string", j.dump());
    return Rational::parse(j.get<std::string>());
}

std::vector<Rational> rat_vector(const json& j) {
    std::vector<Rational> out;
    for (const auto& e : j)
        out.push_back(rat(e));
    return out;
}

RatMatrix matrix_from(const json& j) {
    RatMatrix m(j.size(), j.empty() ? 0 : j.at(0).size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (j.at(r).size() != m.cols())
            throw Error(ErrorKind::Parse, "ragged matrix", "row " + std::to_string(r));
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(r, c) = rat(j.at(r).at(c));
    }
    return m;
}

Tensor3 tensor_from(const json& j) {
    Tensor3 t(j.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t c = 0; c < t.size(); ++c)
                t(k, i, c) = rat(j.at(k).at(i).at(c));
    return t;
}

template <typename F>
json checked(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, "malformed JSON document", e.what());
    }
}

void md_table(std::ostringstream& os, const std::string& corner, const std::string& row_prefix,
              const std::string& col_prefix, std::size_t rows, std::size_t cols,
              const std::function<Rational(std::size_t, std::size_t)>& cell) {
    os << "| " << corner << " |";
    for (std::size_t c = 0; c < cols; ++c)
        os << ' ' << col_prefix << c << " |";
    os << "\n|---|";
    for (std::size_t c = 0; c < cols; ++c)
        os << "---|";
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        os << "| " << row_prefix << r << " |";
        for (std::size_t c = 0; c < cols; ++c)
            os << ' ' << cell(r, c) << " |";
        os << '\n';
    }
    os << '\n';
}

} // namespace

json to_json(const SchemeParameters& params) {
    json j;
    j["d"] = params.d;
    j["t"] = params.t ? json(*params.t) : json(nullptr);
    j["order"] = params.order.str();
    j["valencies"] = rats(params.valencies);
    j["multiplicities"] = rats(params.multiplicities);
    j["P"] = matrix(params.P);
    j["Q"] = matrix(params.Q);
    j["p"] = tensor(params.p);
    j["q"] = tensor(params.q);
    return j;
}

SchemeParameters params_from_json(const json& j) {
    SchemeParameters out;
    checked([&] {
        out.d = j.at("d").get<std::size_t>();
        if (!j.at("t").is_null())
            out.t = j.at("t").get<long>();
        out.order = rat(j.at("order"));
        out.valencies = rat_vector(j.at("valencies"));
        out.multiplicities = rat_vector(j.at("multiplicities"));
        out.P = matrix_from(j.at("P"));
        out.Q = matrix_from(j.at("Q"));
        out.p = tensor_from(j.at("p"));
        out.q = tensor_from(j.at("q"));
        return json();
    });
    const std::size_t k = out.d + 1;
    if (out.valencies.size() != k || out.multiplicities.size() != k || out.P.rows() != k || out.P.cols() != k ||
        out.Q.rows() != k || out.Q.cols() != k || out.p.size() != k || out.q.size() != k)
        throw Error(ErrorKind::Parse, "parameter shapes do not match d", "d = " + std::to_string(out.d));
    return out;
}

std::string to_markdown(const SchemeParameters& params) {
    std::ostringstream os;
    const std::size_t k = params.d + 1;
    os << "# Parameters";
    if (params.t)
        os << " (t = " << *params.t << ", s = " << params.s() << ", b = " << params.bcoef() << ")";
    os << "\n\n|X| = " << params.order << "\n\n";

    os << "## Valencies and multiplicities\n\n";
    md_table(os, "", "", "", 2, k, [&](std::size_t r, std::size_t c) {
        return r == 0 ? params.valencies[c] : params.multiplicities[c];
    });
    os << "Row 0: n_i. Row 1: m_i.\n\n";

    os << "## First eigenmatrix P\n\n";
    md_table(os, "P", "E", "R", k, k, [&](std::size_t r, std::size_t c) { return params.P(r, c); });
    os << "## Second eigenmatrix Q\n\n";
    md_table(os, "Q", "R", "E", k, k, [&](std::size_t r, std::size_t c) { return params.Q(r, c); });

    for (std::size_t h = 1; h < k; ++h) {
        os << "## p^" << h << "_ij\n\n";
        md_table(os, "i \\ j", "", "", k, k, [&](std::size_t i, std::size_t j) { return params.p(h, i, j); });
    }
    for (std::size_t h = 1; h < k; ++h) {
        const bool scaled = params.t && h + 1 < k;
        const Rational factor = scaled ? Rational(*params.t) : Rational(1);
        os << "## " << (scaled ? "t q^" : "q^") << h << "_ij\n\n";
        if (params.t)
            os << (scaled ? "Entries are q^" + std::to_string(h) + "_ij multiplied by t.\n\n"
                          : "Entries are q^" + std::to_string(h) + "_ij without the factor t used above.\n\n");
        md_table(os, "i \\ j", "", "", k, k,
                 [&](std::size_t i, std::size_t j) { return factor * params.q(h, i, j); });
    }
    return os.str();
}

json to_json(const RelationScheme& sch) {
    json rel = json::array();
    for (Element x = 0; x < sch.size(); ++x) {
        json row = json::array();
        for (Element y = 0; y < sch.size(); ++y)
            row.push_back(sch.rel(x, y));
        rel.push_back(std::move(row));
    }
    return {{"size", sch.size()}, {"classes", sch.classes()}, {"rel", std::move(rel)}};
}

RelationScheme scheme_from_json(const json& j) {
    std::size_t size = 0, classes = 0;
    std::vector<std::uint8_t> rel;
    checked([&] {
        size = j.at("size").get<std::size_t>();
        classes = j.at("classes").get<std::size_t>();
        const auto& rows = j.at("rel");
        if (rows.size() != size)
            throw Error(ErrorKind::Parse, "rel has the wrong number of rows", std::to_string(rows.size()));
        for (const auto& row : rows) {
            if (row.size() != size)
                throw Error(ErrorKind::Parse, "rel row has the wrong length", std::to_string(row.size()));
            for (const auto& e : row)
                rel.push_back(static_cast<std::uint8_t>(e.get<int>()));
        }
        return json();
    });
    return RelationScheme(size, classes, std::move(rel));
}

json to_json(const GQ& gq) {
    return {{"s", gq.s()}, {"t", gq.t()}, {"points", gq.point_count()}, {"lines", gq.lines()}};
}

GQ gq_from_json(const json& j) {
    GQ out;
    checked([&] {
        out = GQ(j.at("s").get<long>(), j.at("t").get<long>(), j.at("points").get<std::size_t>(),
                 j.at("lines").get<std::vector<std::vector<PointId>>>());
        return json();
    });
    return out;
}

json to_json(const Hemisystem& h) { return {{"lines", h.lines}}; }

Hemisystem hemisystem_from_json(const json& j) {
    Hemisystem h;
    checked([&] {
        h.lines = j.at("lines").get<std::vector<LineId>>();
        return json();
    });
    std::sort(h.lines.begin(), h.lines.end());
    return h;
}

json triple_to_json(const TripleSolution& sol) {
    json forced = json::object();
    for (const auto& [u, v] : sol.forced)
        forced["[" + std::to_string(u.l) + "," + std::to_string(u.m) + "," + std::to_string(u.n) + "]"] = v.str();
    json free = json::array();
    for (const auto& u : sol.residual_free)
        free.push_back({u.l, u.m, u.n});
    return {{"forced", std::move(forced)}, {"free", std::move(free)}, {"vacuous", false}};
}

json vacuous_triple_json() {
    return {{"forced", json::object()}, {"free", json::array()}, {"vacuous", true}};
}

json to_json(const ValidationReport& report) {
    json out = json::object();
    for (const auto& c : report.checks) {
        json entry = {{"passed", c.passed}};
        if (!c.witness.empty())
            entry["witness"] = c.witness;
        out[c.name] = std::move(entry);
    }
    return out;
}

json to_json(const ReconstructedGQ& rec, const std::vector<Element>& U, const ValidationReport& checks) {
    json cliques = json::array();
    for (const auto& c : rec.cliques)
        cliques.push_back({{"C", c.half_C}, {"Cprime", c.half_Cprime}});
    return {{"cliques", std::move(cliques)},
            {"U", U},
            {"dual_order", {rec.dual.s(), rec.dual.t()}},
            {"checks", to_json(checks)}};
}

} // namespace scheme_forge
