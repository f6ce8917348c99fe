#pragma once

#include "octic/semistable.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace octic {

class MissingBlock : public MathError {
public:
    explicit MissingBlock(const std::string& what) : MathError("MissingBlock: " + what) {}
};

class InconsistentRanks : public MathError {
public:
    explicit InconsistentRanks(const std::string& what) : MathError("InconsistentRanks: " + what) {}
};

class UnknownLabel : public InputError {
public:
    explicit UnknownLabel(const std::string& label) : InputError("UnknownLabel: " + label) {}
};

// Grid position: column c = -k, row R = weight. Rows run 0..6 for threefolds.
using GridPos = std::pair<int, int>;

inline std::string pos_string(GridPos p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

inline constexpr int kFiberDim = 3;

struct Summand {
    int p = 1;       // S^[p]
    int stratum = 0; // index within S^[p]
    int degree = 0;
    int j = 0;
    int dim = 0;
};

struct E1Entry {
    std::vector<Summand> summands;
    int dim() const {
        int d = 0;
        for (const auto& s : summands) d += s.dim;
        return d;
    }
    // Nonzero summand dims joined with "⊕" when there are at most two, else the total.
    std::string display() const {
        std::vector<int> nz;
        for (const auto& s : summands)
            if (s.dim) nz.push_back(s.dim);
        if (nz.empty()) return "0";
        if (nz.size() > 2) return std::to_string(dim());
        std::string out = std::to_string(nz[0]);
        if (nz.size() == 2) out += "⊕" + std::to_string(nz[1]);
        return out;
    }
};

struct E1Grid {
    int min_col = 0;
    int max_col = 0;
    std::map<GridPos, E1Entry> entries;

    int dim(GridPos pos) const {
        auto it = entries.find(pos);
        return it == entries.end() ? 0 : it->second.dim();
    }
};

inline E1Grid assemble_e1(const StrataComplex& s) {
    E1Grid g;
    int n = s.depth();
    g.min_col = -(n - 1);
    g.max_col = n - 1;
    for (int c = g.min_col; c <= g.max_col; ++c)
        for (int r = 0; r <= 2 * kFiberDim; ++r) {
            E1Entry e;
            for (int j = std::max(c, 0);; ++j) {
                int p = 2 * j - c + 1;
                if (p > n) break;
                int a = r + 2 * c - 2 * j;
                auto bettis = s.bettis(p);
                for (std::size_t k = 0; k < bettis.size(); ++k) {
                    int dim = (a >= 0 && a < static_cast<int>(bettis[k].size())) ? bettis[k][a] : 0;
                    e.summands.push_back({p, static_cast<int>(k), a, j, dim});
                }
            }
            g.entries[{c, r}] = std::move(e);
        }
    return g;
}

struct RankAnnotation {
    GridPos map;  // source position of d1
    int rank = 0;
    std::string justification;
    bool with_dual = false;
};

// Labeled generators and the matrix of one d1 map on the part of its source
// complementary to the incoming image. Rows are source generators.
struct CycleModel {
    GridPos map;
    std::vector<std::pair<std::string, std::vector<std::string>>> row_generators;
    std::vector<std::pair<std::string, std::vector<std::string>>> column_generators;
    Matrix<Rational> matrix;
    std::string justification;
    bool with_dual = false;

    std::vector<std::string> row_labels() const {
        std::vector<std::string> out;
        for (const auto& [stratum, labels] : row_generators) out.insert(out.end(), labels.begin(), labels.end());
        return out;
    }
    std::vector<std::string> column_labels() const {
        std::vector<std::string> out;
        for (const auto& [stratum, labels] : column_generators) out.insert(out.end(), labels.begin(), labels.end());
        return out;
    }
    void validate() const {
        auto rows = row_labels();
        auto cols = column_labels();
        if (rows.size() != matrix.rows() || cols.size() != matrix.cols())
            throw InputError("cycle model: matrix is " + std::to_string(matrix.rows()) + "x" +
                             std::to_string(matrix.cols()) + " but there are " + std::to_string(rows.size()) +
                             " row and " + std::to_string(cols.size()) + " column labels");
        std::set<std::string> seen;
        for (const auto& l : rows)
            if (!seen.insert(l).second) throw InputError("cycle model: duplicate label " + l);
        for (const auto& l : cols)
            if (!seen.insert(l).second) throw InputError("cycle model: duplicate label " + l);
    }
    std::size_t left_kernel_dim() const { return matrix.rows() - rank(matrix); }
};

// True iff the chain (a combination of row generators) is annihilated by the model matrix.
inline bool verify_cycle_chain(const CycleModel& cm, const std::map<std::string, Rational>& chain) {
    auto labels = cm.row_labels();
    std::vector<Rational> v(labels.size());
    for (const auto& [label, coeff] : chain) {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw UnknownLabel(label);
        v[static_cast<std::size_t>(it - labels.begin())] = coeff;
    }
    for (std::size_t c = 0; c < cm.matrix.cols(); ++c) {
        Rational sum = 0;
        for (std::size_t r = 0; r < cm.matrix.rows(); ++r) sum += v[r] * cm.matrix(r, c);
        if (sum != 0) return false;
    }
    return true;
}

enum class MapSource { Zero, Nerve, Gysin, Annotation, Dual, CycleModel };

inline std::string to_string(MapSource s) {
    switch (s) {
        case MapSource::Zero: return "zero";
        case MapSource::Nerve: return "nerve coboundary";
        case MapSource::Gysin: return "Gysin transpose";
        case MapSource::Annotation: return "annotation";
        case MapSource::Dual: return "dual";
        case MapSource::CycleModel: return "cycle model";
    }
    return "?";
}

struct MapData {
    GridPos source;
    MapSource how = MapSource::Zero;
    std::optional<Matrix<Rational>> matrix;  // automatic maps, target x source
    std::optional<int> rank;                 // unset until resolved
    std::string justification;
};

struct DifferentialSpec {
    std::map<GridPos, MapData> maps;  // keyed by source position
    std::optional<CycleModel> cycle_model;
    std::vector<RankAnnotation> annotations;
};

inline GridPos dual_of(GridPos p) { return {-p.first - 1, 2 * kFiberDim - p.second}; }

namespace detail {

// Signed incidence of faces: rows index S^[p+1], columns S^[p].
inline Matrix<Rational> nerve_coboundary(const StrataComplex& s, int p) {
    auto lower = s.simplices(p);
    auto upper = s.simplices(p + 1);
    Matrix<Rational> m(upper.size(), lower.size());
    for (std::size_t r = 0; r < upper.size(); ++r)
        for (std::size_t k = 0; k < upper[r].size(); ++k) {
            auto face = upper[r];
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
            auto it = std::find(lower.begin(), lower.end(), face);
            if (it == lower.end()) throw MathError("nerve is not a simplicial complex");
            m(r, static_cast<std::size_t>(it - lower.begin())) = (k % 2 ? -1 : 1);
        }
    return m;
}

inline int top_degree(int p) { return 2 * (kFiberDim + 1 - p); }

// The matrix of d1 from `src` when every nonzero block is a degree-0
// restriction or a top-degree Gysin map; nullopt otherwise.
inline std::optional<std::pair<Matrix<Rational>, MapSource>> automatic_map(const StrataComplex& s, const E1Entry& src,
                                                                            const E1Entry& tgt) {
    auto offsets = [](const E1Entry& e) {
        std::map<std::pair<int, int>, std::size_t> off;  // (p, stratum) -> row offset
        std::size_t at = 0;
        for (const auto& x : e.summands) {
            off[{x.p, x.stratum}] = at;
            at += static_cast<std::size_t>(x.dim);
        }
        return std::make_pair(off, at);
    };
    auto [soff, sdim] = offsets(src);
    auto [toff, tdim] = offsets(tgt);
    Matrix<Rational> m(tdim, sdim);
    std::set<MapSource> kinds;
    std::map<int, int> p_dims, p_tdims;
    for (const auto& x : src.summands) p_dims[x.p] += x.dim;
    for (const auto& x : tgt.summands) p_tdims[x.p] += x.dim;
    for (const auto& [p, dim] : p_dims) {
        if (dim == 0) continue;
        auto degree_of = [&](int q) {
            for (const auto& x : src.summands)
                if (x.p == q) return x.degree;
            return -1;
        };
        int a = degree_of(p);
        bool restriction_live = p_tdims.count(p + 1) && p_tdims[p + 1] > 0;
        bool gysin_live = p_tdims.count(p - 1) && p_tdims[p - 1] > 0;
        if (restriction_live) {
            if (a != 0) return std::nullopt;
            auto d = nerve_coboundary(s, p);
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c)
                    if (d(r, c) != 0) m(toff[{p + 1, static_cast<int>(r)}], soff[{p, static_cast<int>(c)}]) = d(r, c);
            kinds.insert(MapSource::Nerve);
        }
        if (gysin_live) {
            if (a != top_degree(p)) return std::nullopt;
            auto d = nerve_coboundary(s, p - 1);
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c)
                    if (d(r, c) != 0) m(toff[{p - 1, static_cast<int>(c)}], soff[{p, static_cast<int>(r)}]) = d(r, c);
            kinds.insert(MapSource::Gysin);
        }
    }
    // Degree-0 and top-degree groups of connected strata are one-dimensional.
    for (const auto& e : {&src, &tgt})
        for (const auto& x : e->summands)
            if (x.dim > 1 && (x.degree == 0 || x.degree == top_degree(x.p))) return std::nullopt;
    MapSource how = kinds.empty() ? MapSource::Zero : (kinds.size() == 1 ? *kinds.begin() : MapSource::Nerve);
    return std::make_pair(std::move(m), how);
}

}  // namespace detail

// Builds every d1 map of the grid. Automatic maps get matrices; the others
// take ranks from annotations, their declared duals, or the cycle model
// (resolved in compute_e2, which knows incoming ranks).
inline DifferentialSpec build_d1(const StrataComplex& s, const E1Grid& g, std::optional<CycleModel> cm,
                                 const std::vector<RankAnnotation>& annotations) {
    DifferentialSpec d;
    d.annotations = annotations;
    if (cm) cm->validate();
    d.cycle_model = std::move(cm);
    std::map<GridPos, const RankAnnotation*> by_map;
    std::map<GridPos, const RankAnnotation*> dual_of_annotation;
    for (const auto& a : annotations) {
        if (by_map.count(a.map)) throw InputError("two annotations for map " + pos_string(a.map));
        by_map[a.map] = &a;
        if (a.with_dual) dual_of_annotation[dual_of(a.map)] = &a;
    }
    for (int c = g.min_col; c < g.max_col; ++c)
        for (int r = 0; r <= 2 * kFiberDim; ++r) {
            GridPos pos{c, r};
            MapData md;
            md.source = pos;
            const auto& src = g.entries.at(pos);
            const auto& tgt = g.entries.at({c + 1, r});
            auto ann = by_map.find(pos);
            if (src.dim() == 0 || tgt.dim() == 0) {
                md.how = MapSource::Zero;
                md.rank = 0;
                if (ann != by_map.end() && ann->second->rank != 0)
                    throw InconsistentRanks("annotation for zero map " + pos_string(pos));
            } else if (auto autom = detail::automatic_map(s, src, tgt)) {
                md.how = autom->second;
                md.rank = static_cast<int>(rank(autom->first));
                md.matrix = std::move(autom->first);
                if (ann != by_map.end()) {
                    if (ann->second->rank != *md.rank)
                        throw InconsistentRanks("annotation gives rank " + std::to_string(ann->second->rank) + " for " +
                                                pos_string(pos) + ", computed " + std::to_string(*md.rank));
                    md.justification = ann->second->justification;
                }
            } else if (ann != by_map.end()) {
                md.how = MapSource::Annotation;
                md.rank = ann->second->rank;
                md.justification = ann->second->justification;
            } else if (auto du = dual_of_annotation.find(pos); du != dual_of_annotation.end()) {
                md.how = MapSource::Dual;
                md.rank = du->second->rank;
                md.justification = "dual of " + pos_string(du->second->map) + ": " + du->second->justification;
            } else if (d.cycle_model && (d.cycle_model->map == pos ||
                                         (d.cycle_model->with_dual && dual_of(d.cycle_model->map) == pos))) {
                md.how = d.cycle_model->map == pos ? MapSource::CycleModel : MapSource::Dual;
                md.justification = d.cycle_model->justification;
            } else {
                throw MissingBlock("no matrix, model or annotation for d1 at " + pos_string(pos));
            }
            d.maps[pos] = std::move(md);
        }
    return d;
}

struct LimitReport {
    E1Grid e1;
    std::map<GridPos, int> e2;
    std::map<GridPos, MapData> maps;
    Betti betti;
    std::vector<int> h3_weights;  // ascending weight
    bool pure = false;
    bool weight_symmetric = false;
    int euler_e1 = 0;
    int euler_betti = 0;
};

inline LimitReport compute_e2(const E1Grid& g, DifferentialSpec d) {
    auto rank_at = [&](GridPos p) -> std::optional<int> {
        auto it = d.maps.find(p);
        if (it == d.maps.end()) return 0;  // outside the grid
        return it->second.rank;
    };
    // Cycle model: rank = dim(source) - rank(incoming) - left nullity of the reduced matrix.
    if (d.cycle_model) {
        GridPos m = d.cycle_model->map;
        auto in = rank_at({m.first - 1, m.second});
        if (!in) throw MissingBlock("incoming rank for the cycle model at " + pos_string(m));
        int r = g.dim(m) - *in - static_cast<int>(d.cycle_model->left_kernel_dim());
        if (r < 0) throw InconsistentRanks("cycle model at " + pos_string(m));
        d.maps.at(m).rank = r;
        if (d.cycle_model->with_dual) d.maps.at(dual_of(m)).rank = r;
    }
    for (const auto& [pos, md] : d.maps) {
        if (!md.rank) throw MissingBlock("unresolved rank at " + pos_string(pos));
        int bound = std::min(g.dim(pos), g.dim({pos.first + 1, pos.second}));
        if (*md.rank < 0 || *md.rank > bound)
            throw InconsistentRanks("rank " + std::to_string(*md.rank) + " at " + pos_string(pos) + " exceeds " +
                                    std::to_string(bound));
    }
    // d1 o d1 = 0 on consecutive matrix maps.
    for (const auto& [pos, md] : d.maps) {
        auto next = d.maps.find({pos.first + 1, pos.second});
        if (!md.matrix || next == d.maps.end() || !next->second.matrix) continue;
        if (!(*next->second.matrix * *md.matrix).is_zero_matrix())
            throw InconsistentRanks("d1 o d1 != 0 at " + pos_string(pos));
    }
    LimitReport rep;
    rep.e1 = g;
    rep.betti.assign(2 * kFiberDim + 1, 0);
    for (const auto& [pos, entry] : g.entries) {
        int in = *rank_at({pos.first - 1, pos.second});
        int out = *rank_at(pos);
        int e2 = entry.dim() - in - out;
        if (e2 < 0) throw InconsistentRanks("negative E2 at " + pos_string(pos));
        rep.e2[pos] = e2;
        int q = pos.first + pos.second;
        if (q < 0 || q > 2 * kFiberDim) {
            if (e2 != 0) throw InconsistentRanks("E2 outside the cohomological range at " + pos_string(pos));
            continue;
        }
        rep.betti[q] += e2;
        rep.euler_e1 += (q % 2 ? -1 : 1) * entry.dim();
    }
    rep.euler_betti = euler_characteristic(rep.betti);
    std::vector<int> by_weight(2 * kFiberDim + 1, 0);
    for (int r = 0; r <= 2 * kFiberDim; ++r) {
        auto it = rep.e2.find({kFiberDim - r, r});
        if (it != rep.e2.end()) by_weight[r] = it->second;
    }
    int spread = 0;
    for (int r = 0; r <= 2 * kFiberDim; ++r)
        if (by_weight[r]) spread = std::max(spread, std::abs(r - kFiberDim));
    rep.h3_weights.assign(by_weight.begin() + kFiberDim - spread, by_weight.begin() + kFiberDim + spread + 1);
    rep.pure = true;
    for (const auto& [pos, v] : rep.e2)
        if (pos.first + pos.second == kFiberDim && pos.second != kFiberDim && v != 0) rep.pure = false;
    rep.weight_symmetric = true;
    for (const auto& [pos, v] : rep.e2) {
        auto it = rep.e2.find({-pos.first, pos.second + 2 * pos.first});
        if (v != (it == rep.e2.end() ? 0 : it->second)) rep.weight_symmetric = false;
    }
    rep.maps = std::move(d.maps);
    return rep;
}

// Seven rows, weight 6 on top, one column per grid column.
template <typename Cell>
std::string render_grid(const E1Grid& g, Cell cell) {
    std::vector<std::vector<std::string>> rows;
    std::size_t width = 1;
    for (int r = 2 * kFiberDim; r >= 0; --r) {
        std::vector<std::string> row;
        for (int c = g.min_col; c <= g.max_col; ++c) {
            row.push_back(cell(GridPos{c, r}));
            width = std::max(width, row.back().size());
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            // "⊕" is three bytes but one column wide
            std::size_t shown = row[i].size() - 2 * static_cast<std::size_t>(std::count(row[i].begin(), row[i].end(), '\xe2'));
            os << (i ? "  " : "") << std::string(width > shown ? width - shown : 0, ' ') << row[i];
        }
        os << '\n';
    }
    return os.str();
}

inline std::string render_e1(const E1Grid& g) {
    return render_grid(g, [&](GridPos p) { return g.entries.at(p).display(); });
}

inline std::string render_e2(const LimitReport& r) {
    return render_grid(r.e1, [&](GridPos p) { return std::to_string(r.e2.at(p)); });
}

}  // namespace octic
