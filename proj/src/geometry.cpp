#include "scheme_forge/geometry.hpp"

#include "scheme_forge/error.hpp"
#include "scheme_forge/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace scheme_forge {

ProjPoint::ProjPoint(std::array<GF9, 4> coords) : x_(coords) {
    const auto it = std::find_if(x_.begin(), x_.end(), [](GF9 v) { return !v.is_zero(); });
    if (it == x_.end())
        throw Error(ErrorKind::BadParameter, "zero vector is not a projective point");
    const GF9 inv = it->inverse();
    for (auto& v : x_)
        v = v * inv;
}

int ProjPoint::rank() const {
    // points with leading 1 at position k: 9^(3-k) of them, tail read base 9
    int lead = 0;
    while (x_[lead].is_zero())
        ++lead;
    int offset = 0;
    for (int k = 0, block = 729; k < lead; ++k, block /= 9)
        offset += block;
    int tail = 0;
    for (int k = lead + 1; k < 4; ++k)
        tail = tail * 9 + x_[k].index();
    return offset + tail;
}

std::vector<ProjPoint> projective_points() {
    std::vector<ProjPoint> out;
    out.reserve(820);
    for (int lead = 0; lead < 4; ++lead) {
        const int tail_len = 3 - lead;
        int count = 1;
        for (int i = 0; i < tail_len; ++i)
            count *= 9;
        for (int code = 0; code < count; ++code) {
            std::array<GF9, 4> c{};
            c[lead] = GF9::one();
            int rem = code;
            for (int k = 3; k > lead; --k) {
                c[k] = GF9::from_index(rem % 9);
                rem /= 9;
            }
            out.emplace_back(c);
        }
    }
    return out;
}

GF9 hermitian_form(const ProjPoint& p) {
    GF9 acc;
    for (GF9 v : p.coords())
        acc = acc + v.norm();
    return acc;
}

// ---------------------------------------------------------------------------

GQ::GQ(long s, long t, std::size_t point_count, std::vector<std::vector<PointId>> lines)
    : s_(s), t_(t), point_count_(point_count), lines_(std::move(lines)),
      lines_through_(point_count), collinear_(point_count * point_count, 0) {
    for (LineId l = 0; l < lines_.size(); ++l) {
        auto& ln = lines_[l];
        std::sort(ln.begin(), ln.end());
        for (PointId p : ln) {
            if (p >= point_count_)
                throw Error(ErrorKind::BadParameter, "line refers to a missing point",
                            "line " + std::to_string(l) + " point " + std::to_string(p));
            lines_through_[p].push_back(l);
        }
        for (PointId a : ln)
            for (PointId b : ln)
                if (a != b)
                    collinear_[a * point_count_ + b] = 1;
    }
}

bool GQ::incident(PointId p, LineId l) const {
    return std::binary_search(lines_[l].begin(), lines_[l].end(), p);
}

GQ GQ::dual() const {
    std::vector<std::vector<PointId>> dual_lines(point_count_);
    for (PointId p = 0; p < point_count_; ++p)
        dual_lines[p].assign(lines_through_[p].begin(), lines_through_[p].end());
    return GQ(t_, s_, lines_.size(), std::move(dual_lines));
}

GQ GQ::without_line(LineId l) const {
    auto ls = lines_;
    ls.erase(ls.begin() + l);
    return GQ(s_, t_, point_count_, std::move(ls));
}

std::vector<ProjPoint> hermitian_points() {
    std::vector<ProjPoint> out;
    for (const auto& p : projective_points())
        if (hermitian_form(p).is_zero())
            out.push_back(p);
    return out;
}

GQ build_hermitian_gq() {
    const std::vector<ProjPoint> pts = hermitian_points();
    std::vector<int> id_of_rank(820, -1);
    for (std::size_t i = 0; i < pts.size(); ++i)
        id_of_rank[pts[i].rank()] = static_cast<int>(i);

    const std::size_t n = pts.size();
    std::vector<std::uint8_t> covered(n * n, 0);
    std::vector<std::vector<PointId>> lines;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (covered[a * n + b])
                continue;
            // the line through a and b: {b} and {a + lambda b}
            std::vector<PointId> ln;
            ln.push_back(static_cast<PointId>(b));
            bool on_surface = true;
            for (GF9 lambda : GF9::all()) {
                std::array<GF9, 4> c{};
                for (int k = 0; k < 4; ++k)
                    c[k] = pts[a].coords()[k] + lambda * pts[b].coords()[k];
                const int id = id_of_rank[ProjPoint(c).rank()];
                if (id < 0) {
                    on_surface = false;
                    break;
                }
                ln.push_back(static_cast<PointId>(id));
            }
            if (!on_surface)
                continue;
            std::sort(ln.begin(), ln.end());
            for (PointId u : ln)
                for (PointId v : ln)
                    covered[u * n + v] = 1;
            lines.push_back(std::move(ln));
        }
    std::sort(lines.begin(), lines.end());
    return GQ(9, 3, n, std::move(lines));
}

GQ grid_gq(long rows, long cols) {
    // points (r, c); lines are the rows and the columns
    std::vector<std::vector<PointId>> lines;
    for (long r = 0; r < rows; ++r) {
        std::vector<PointId> ln;
        for (long c = 0; c < cols; ++c)
            ln.push_back(static_cast<PointId>(r * cols + c));
        lines.push_back(std::move(ln));
    }
    for (long c = 0; c < cols; ++c) {
        std::vector<PointId> ln;
        for (long r = 0; r < rows; ++r)
            ln.push_back(static_cast<PointId>(r * cols + c));
        lines.push_back(std::move(ln));
    }
    if (rows != cols)
        throw Error(ErrorKind::BadParameter, "grid must be square to be a GQ");
    return GQ(rows - 1, 1, static_cast<std::size_t>(rows * cols), std::move(lines));
}

ValidationReport verify_gq(const GQ& gq) {
    ValidationReport rep;
    const long s = gq.s();
    const long t = gq.t();
    const std::size_t np = gq.point_count();
    const std::size_t nl = gq.line_count();

    rep.add("point count (s+1)(st+1)", static_cast<long>(np) == (s + 1) * (s * t + 1),
            std::to_string(np) + " points");
    rep.add("line count (t+1)(st+1)", static_cast<long>(nl) == (t + 1) * (s * t + 1),
            std::to_string(nl) + " lines");

    std::string w;
    for (PointId p = 0; p < np && w.empty(); ++p)
        if (static_cast<long>(gq.lines_through(p).size()) != t + 1)
            w = "point " + std::to_string(p) + " on " + std::to_string(gq.lines_through(p).size()) + " lines";
    // two points on two common lines means two lines share two points
    for (LineId a = 0; a < nl && w.empty(); ++a)
        for (LineId b = a + 1; b < nl && w.empty(); ++b) {
            std::vector<PointId> common;
            std::set_intersection(gq.line(a).begin(), gq.line(a).end(), gq.line(b).begin(), gq.line(b).end(),
                                  std::back_inserter(common));
            if (common.size() > 1)
                w = "points " + std::to_string(common[0]) + ", " + std::to_string(common[1]) + " on lines " +
                    std::to_string(a) + " and " + std::to_string(b);
        }
    rep.add("(i) t+1 lines per point, at most one line per point pair", w.empty(), w);

    w.clear();
    for (LineId l = 0; l < nl && w.empty(); ++l)
        if (static_cast<long>(gq.line(l).size()) != s + 1)
            w = "line " + std::to_string(l) + " has " + std::to_string(gq.line(l).size()) + " points";
    rep.add("(ii) s+1 points per line, at most one point per line pair", w.empty(), w);

    const auto v = kernels::gq_axiom3_violation(gq);
    w = v ? "point " + std::to_string(v->point) + ", line " + std::to_string(v->line) + ": " +
                std::to_string(v->count) + " connecting pairs"
          : "";
    rep.add("(iii) exactly one (y, M) for every non-incident (x, L)", !v, w);
    return rep;
}

// ---------------------------------------------------------------------------
// Hemisystem search

namespace {

struct SearchState {
    std::vector<std::int8_t> line_state;  // -1 undecided, 0 out, 1 in
    std::vector<int> chosen;              // per point
    std::vector<int> open;                // undecided lines per point
};

class HemisystemSearch {
public:
    HemisystemSearch(const GQ& gq, std::vector<LineId> order)
        : gq_(gq), order_(std::move(order)), quota_(static_cast<int>((gq.t() + 1) / 2)) {}

    std::optional<std::vector<LineId>> run() {
        SearchState st;
        st.line_state.assign(gq_.line_count(), -1);
        st.chosen.assign(gq_.point_count(), 0);
        st.open.resize(gq_.point_count());
        for (PointId p = 0; p < gq_.point_count(); ++p)
            st.open[p] = static_cast<int>(gq_.lines_through(p).size());
        if (!propagate(st))
            return std::nullopt;
        return dfs(std::move(st));
    }

private:
    // Assign a line and update counters; returns false on quota violation.
    bool assign(SearchState& st, LineId l, bool in, std::vector<PointId>& dirty) const {
        st.line_state[l] = in ? 1 : 0;
        for (PointId p : gq_.line(l)) {
            --st.open[p];
            if (in)
                ++st.chosen[p];
            if (st.chosen[p] > quota_ || st.chosen[p] + st.open[p] < quota_)
                return false;
            dirty.push_back(p);
        }
        return true;
    }

    bool propagate(SearchState& st) const {
        std::vector<PointId> queue(gq_.point_count());
        std::iota(queue.begin(), queue.end(), 0);
        while (!queue.empty()) {
            const PointId p = queue.back();
            queue.pop_back();
            if (st.open[p] == 0)
                continue;
            const bool force_out = st.chosen[p] == quota_;
            const bool force_in = st.chosen[p] + st.open[p] == quota_;
            if (!force_out && !force_in)
                continue;
            for (LineId l : gq_.lines_through(p))
                if (st.line_state[l] < 0 && !assign(st, l, force_in, queue))
                    return false;
        }
        return true;
    }

    std::optional<std::vector<LineId>> dfs(SearchState st) {
        // most constrained point: fewest undecided lines
        PointId best = 0;
        int best_open = 0;
        for (PointId p = 0; p < gq_.point_count(); ++p)
            if (st.open[p] > 0 && (best_open == 0 || st.open[p] < best_open)) {
                best = p;
                best_open = st.open[p];
            }
        if (best_open == 0) {
            std::vector<LineId> out;
            for (LineId l = 0; l < gq_.line_count(); ++l)
                if (st.line_state[l] == 1)
                    out.push_back(l);
            return out;
        }
        LineId branch = 0;
        for (LineId l : order_)
            if (st.line_state[l] < 0 && gq_.incident(best, l)) {
                branch = l;
                break;
            }
        for (bool in : {true, false}) {
            SearchState next = st;
            std::vector<PointId> dirty;
            if (!assign(next, branch, in, dirty) || !propagate(next))
                continue;
            if (auto found = dfs(std::move(next)))
                return found;
        }
        return std::nullopt;
    }

    const GQ& gq_;
    std::vector<LineId> order_;
    int quota_;
};

} // namespace

Hemisystem find_hemisystem(const GQ& gq, const HemisystemSearchOptions& opts) {
    if (gq.t() % 2 == 0)
        throw Error(ErrorKind::BadParameter, "hemisystems need odd t", std::to_string(gq.t()));
    std::vector<LineId> order(gq.line_count());
    std::iota(order.begin(), order.end(), 0);
    if (opts.seed) {
        std::mt19937_64 rng(*opts.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    HemisystemSearch search(gq, std::move(order));
    auto found = search.run();
    if (!found)
        throw Error(ErrorKind::NotFound, "no hemisystem exists for this line set");
    return Hemisystem{std::move(*found)};
}

Check check_hemisystem(const GQ& gq, const Hemisystem& h) {
    const long quota = (gq.t() + 1) / 2;
    std::vector<std::uint8_t> in(gq.line_count(), 0);
    for (LineId l : h.lines) {
        if (l >= gq.line_count())
            return {"hemisystem", false, "line id " + std::to_string(l) + " out of range"};
        if (in[l])
            return {"hemisystem", false, "line " + std::to_string(l) + " listed twice"};
        in[l] = 1;
    }
    for (PointId p = 0; p < gq.point_count(); ++p) {
        long c = 0;
        for (LineId l : gq.lines_through(p))
            c += in[l];
        if (c != quota)
            return {"hemisystem", false,
                    "point " + std::to_string(p) + " on " + std::to_string(c) + " lines of U, quota " +
                        std::to_string(quota)};
    }
    const long t = gq.t();
    if (gq.s() == t * t && static_cast<long>(h.lines.size()) != (t * t * t + 1) * (t + 1) / 2)
        return {"hemisystem", false, "size " + std::to_string(h.lines.size())};
    return {"hemisystem", true, {}};
}

bool verify_hemisystem(const GQ& gq, const Hemisystem& h) { return check_hemisystem(gq, h).passed; }

Hemisystem complement(const GQ& gq, const Hemisystem& h) {
    std::vector<std::uint8_t> in(gq.line_count(), 0);
    for (LineId l : h.lines)
        in.at(l) = 1;
    Hemisystem out;
    for (LineId l = 0; l < gq.line_count(); ++l)
        if (!in[l])
            out.lines.push_back(l);
    return out;
}

} // namespace scheme_forge
