#pragma once

#include "scheme_forge/gf9.hpp"
#include "scheme_forge/scheme_params.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace scheme_forge {

/// Homogeneous coordinates over GF(9), first nonzero coordinate equal to 1.
class ProjPoint {
public:
    /// Throws Error(BadParameter) for the zero vector.
    explicit ProjPoint(std::array<GF9, 4> coords);

    const std::array<GF9, 4>& coords() const { return x_; }
    /// Position in the canonical enumeration of PG(3,9), 0..819.
    int rank() const;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

private:
    std::array<GF9, 4> x_;
};

/// All (9^4 - 1) / 8 = 820 points of PG(3,9), ordered by rank().
std::vector<ProjPoint> projective_points();

/// x0^4 + x1^4 + x2^4 + x3^4, the Hermitian form over GF(9).
GF9 hermitian_form(const ProjPoint& p);

using PointId = std::uint32_t;
using LineId = std::uint32_t;

/// Finite point-line incidence structure, intended to be a GQ of order (s, t).
/// Lines are stored as sorted point-id lists.
class GQ {
public:
    GQ() = default;
    GQ(long s, long t, std::size_t point_count, std::vector<std::vector<PointId>> lines);

    long s() const { return s_; }
    long t() const { return t_; }
    std::size_t point_count() const { return point_count_; }
    std::size_t line_count() const { return lines_.size(); }
    const std::vector<std::vector<PointId>>& lines() const { return lines_; }
    const std::vector<PointId>& line(LineId l) const { return lines_[l]; }
    /// Lines through each point, sorted.
    const std::vector<LineId>& lines_through(PointId p) const { return lines_through_[p]; }
    bool incident(PointId p, LineId l) const;
    /// Distinct points on a common line.
    bool collinear(PointId a, PointId b) const { return collinear_[a * point_count_ + b] != 0; }

    /// Same incidence with the roles of points and lines swapped.
    GQ dual() const;
    /// Copy without line `l`; point ids are unchanged.
    GQ without_line(LineId l) const;

private:
    long s_ = 0;
    long t_ = 0;
    std::size_t point_count_ = 0;
    std::vector<std::vector<PointId>> lines_;
    std::vector<std::vector<LineId>> lines_through_;
    std::vector<std::uint8_t> collinear_;
};

/// Hermitian surface H(3,9): 280 points of PG(3,9) on the Hermitian form and
/// the 112 lines contained in it, a GQ of order (9, 3).
GQ build_hermitian_gq();

/// Surface point ids of build_hermitian_gq() mapped back to coordinates.
std::vector<ProjPoint> hermitian_points();

/// GQ axioms with alpha = 1 for the stored order (s, t), including the point
/// and line counts (s+1)(st+1) and (t+1)(st+1).
ValidationReport verify_gq(const GQ& gq);

/// The (s+1) x (t+1) grid, a GQ of order (s, 1).
GQ grid_gq(long rows, long cols);

struct Hemisystem {
    std::vector<LineId> lines;  // sorted
};

struct HemisystemSearchOptions {
    /// When set, lines are visited in a shuffled order seeded by this value.
    std::optional<std::uint64_t> seed;
};

/// Depth-first search for a set of lines containing exactly (t+1)/2 lines
/// through every point. Throws Error(NotFound) when the search is exhausted.
Hemisystem find_hemisystem(const GQ& gq, const HemisystemSearchOptions& opts = {});

/// Per-point quota and the size (t^3+1)(t+1)/2 when s = t^2.
Check check_hemisystem(const GQ& gq, const Hemisystem& candidate);
bool verify_hemisystem(const GQ& gq, const Hemisystem& candidate);

Hemisystem complement(const GQ& gq, const Hemisystem& h);

} // namespace scheme_forge
