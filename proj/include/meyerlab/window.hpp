#pragma once
/*!
 * \file window.hpp
 * \brief Windows in internal space: finite unions of boxes with open/closed faces.
 *
 * `contains` answers membership in the window as given (face flags honored);
 * `membership` classifies against the closed union: interior, boundary or
 * exterior. The normal form splits the union on the grid of all face
 * coordinates and merges cells back into boxes with disjoint interiors.
 */

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "scalar.hpp"
#include "scheme.hpp"
#include "verdict.hpp"

namespace meyerlab {

template <Scalar S>
struct WindowBox {
    Point<S> lo;
    Point<S> hi;
    std::vector<bool> lo_closed;
    std::vector<bool> hi_closed;

    static WindowBox closed(Point<S> lo, Point<S> hi) {
        const auto n = lo.size();
        return WindowBox{std::move(lo), std::move(hi), std::vector<bool>(n, true), std::vector<bool>(n, true)};
    }
    static WindowBox interval(const S& a, const S& b, bool lo_closed = true, bool hi_closed = true) {
        return WindowBox{{a}, {b}, {lo_closed}, {hi_closed}};
    }

    bool contains(const Point<S>& p, double tol) const {
        for (std::size_t i = 0; i < p.size(); ++i) {
            const int l = cmp(p[i], lo[i], tol);
            const int h = cmp(p[i], hi[i], tol);
            if (l < 0 || (l == 0 && !lo_closed[i])) return false;
            if (h > 0 || (h == 0 && !hi_closed[i])) return false;
        }
        return true;
    }
};

enum class Membership { Interior, Boundary, Exterior };

inline std::string_view to_string(Membership m) {
    switch (m) {
        case Membership::Interior: return "Interior";
        case Membership::Boundary: return "Boundary";
        case Membership::Exterior: return "Exterior";
    }
    return "?";
}

template <Scalar S>
class Window {
public:
    Window() = default;

    /// Validates and normalizes; every box needs lo < hi on every axis.
    Window(std::size_t m, std::vector<WindowBox<S>> boxes, double tol = 0.0) : m_(m), tol_(tol), boxes_(std::move(boxes)) {
        if (m_ == 0) {
            boxes_.assign(1, WindowBox<S>{});
            normal_ = boxes_;
            return;
        }
        if (boxes_.empty()) throw Error(ErrorKind::InvalidWindow, "window has no boxes");
        for (const auto& b : boxes_) {
            if (b.lo.size() != m_ || b.hi.size() != m_ || b.lo_closed.size() != m_ || b.hi_closed.size() != m_) {
                throw Error(ErrorKind::DimensionMismatch, "window box has wrong dimension");
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (cmp(b.lo[i], b.hi[i], tol_) >= 0) {
                    throw Error(ErrorKind::InvalidWindow, "box with empty interior on axis " + std::to_string(i) +
                                                              ": [" + ScalarTraits<S>::format(b.lo[i]) + ", " +
                                                              ScalarTraits<S>::format(b.hi[i]) + "]");
                }
            }
        }
        build_grid();
    }

    std::size_t dim() const { return m_; }
    const std::vector<WindowBox<S>>& input_boxes() const { return boxes_; }
    /// Boxes with pairwise disjoint interiors covering the same set.
    const std::vector<WindowBox<S>>& normal_form() const { return normal_; }

    /// Membership honoring the face flags of the input boxes.
    bool contains(const Point<S>& p) const {
        if (p.size() != m_) throw Error(ErrorKind::DimensionMismatch, "internal point has wrong dimension");
        for (const auto& b : boxes_) {
            if (b.contains(p, tol_)) return true;
        }
        return false;
    }

    /// Classification against the closed union.
    Membership membership(const Point<S>& p) const {
        if (p.size() != m_) throw Error(ErrorKind::DimensionMismatch, "internal point has wrong dimension");
        if (m_ == 0) return Membership::Interior;
        // For each axis, the indices of grid cells whose closure contains p.
        std::vector<std::vector<std::ptrdiff_t>> adj(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& br = breaks_[i];
            const auto k = static_cast<std::ptrdiff_t>(br.size());
            // Cell j spans [br[j], br[j+1]]; cells -1 and k-1 are the unbounded outside.
            std::ptrdiff_t lo = 0, hi = k;
            while (lo < hi) {
                const auto mid = (lo + hi) / 2;
                if (cmp(br[static_cast<std::size_t>(mid)], p[i], tol_) < 0) lo = mid + 1;
                else hi = mid;
            }
            if (lo < k && cmp(br[static_cast<std::size_t>(lo)], p[i], tol_) == 0) {
                adj[i] = {lo - 1, lo};
            } else {
                adj[i] = {lo - 1};
            }
        }
        bool any_in = false;
        bool all_in = true;
        std::vector<std::size_t> pick(m_, 0);
        while (true) {
            bool inside = true;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                const auto c = adj[i][pick[i]];
                const auto cells = static_cast<std::ptrdiff_t>(breaks_[i].size()) - 1;
                if (c < 0 || c >= cells) {
                    inside = false;
                    break;
                }
                idx = idx * static_cast<std::size_t>(cells) + static_cast<std::size_t>(c);
            }
            if (inside) inside = cell_in_[idx] != 0;
            any_in = any_in || inside;
            all_in = all_in && inside;
            std::size_t i = 0;
            for (; i < m_; ++i) {
                if (++pick[i] < adj[i].size()) break;
                pick[i] = 0;
            }
            if (i == m_) break;
        }
        if (!any_in) return Membership::Exterior;
        return all_in ? Membership::Interior : Membership::Boundary;
    }

    /// Bounding box of the closure.
    Box<S> bounding_box() const {
        Box<S> out;
        if (m_ == 0) return out;
        out.lo = boxes_[0].lo;
        out.hi = boxes_[0].hi;
        for (const auto& b : boxes_) {
            for (std::size_t i = 0; i < m_; ++i) {
                if (cmp(b.lo[i], out.lo[i], tol_) < 0) out.lo[i] = b.lo[i];
                if (cmp(b.hi[i], out.hi[i], tol_) > 0) out.hi[i] = b.hi[i];
            }
        }
        return out;
    }

    /// Window translated by v (all boxes, flags kept).
    Window translated(const Point<S>& v) const {
        auto bs = boxes_;
        for (auto& b : bs) {
            b.lo = b.lo + v;
            b.hi = b.hi + v;
        }
        return Window(m_, std::move(bs), tol_);
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < boxes_.size(); ++k) {
            if (k) out += " u ";
            const auto& b = boxes_[k];
            for (std::size_t i = 0; i < m_; ++i) {
                if (i) out += "x";
                out += b.lo_closed[i] ? "[" : "(";
                out += ScalarTraits<S>::format(b.lo[i]) + ", " + ScalarTraits<S>::format(b.hi[i]);
                out += b.hi_closed[i] ? "]" : ")";
            }
        }
        return m_ == 0 ? "{pt}" : out;
    }

private:
    void build_grid() {
        breaks_.assign(m_, {});
        for (std::size_t i = 0; i < m_; ++i) {
            for (const auto& b : boxes_) {
                breaks_[i].push_back(b.lo[i]);
                breaks_[i].push_back(b.hi[i]);
            }
            auto& br = breaks_[i];
            const double t = tol_;
            std::sort(br.begin(), br.end(), [t](const S& x, const S& y) { return cmp(x, y, t) < 0; });
            br.erase(std::unique(br.begin(), br.end(), [t](const S& x, const S& y) { return cmp(x, y, t) == 0; }),
                     br.end());
        }
        std::size_t total = 1;
        for (const auto& br : breaks_) total *= br.size() - 1;
        cell_in_.assign(total, 0);
        std::vector<std::size_t> c(m_, 0);
        const S two = ScalarTraits<S>::from_int(2);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            for (std::size_t i = m_; i-- > 0;) {
                c[i] = rem % (breaks_[i].size() - 1);
                rem /= breaks_[i].size() - 1;
            }
            Point<S> mid(m_);
            for (std::size_t i = 0; i < m_; ++i) mid[i] = (breaks_[i][c[i]] + breaks_[i][c[i] + 1]) / two;
            for (const auto& b : boxes_) {
                if (b.contains(mid, 0.0)) {
                    cell_in_[idx] = 1;
                    break;
                }
            }
        }
        // Normal form: in-cells, then greedy merging of face-adjacent pairs.
        std::vector<WindowBox<S>> cells;
        for (std::size_t idx = 0; idx < total; ++idx) {
            if (!cell_in_[idx]) continue;
            std::size_t rem = idx;
            for (std::size_t i = m_; i-- > 0;) {
                c[i] = rem % (breaks_[i].size() - 1);
                rem /= breaks_[i].size() - 1;
            }
            Point<S> lo(m_), hi(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                lo[i] = breaks_[i][c[i]];
                hi[i] = breaks_[i][c[i] + 1];
            }
            cells.push_back(WindowBox<S>::closed(lo, hi));
        }
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t a = 0; a < cells.size() && !merged; ++a) {
                for (std::size_t b = a + 1; b < cells.size() && !merged; ++b) {
                    for (std::size_t ax = 0; ax < m_ && !merged; ++ax) {
                        bool same = true;
                        for (std::size_t i = 0; i < m_ && same; ++i) {
                            if (i == ax) continue;
                            same = cmp(cells[a].lo[i], cells[b].lo[i], tol_) == 0 &&
                                   cmp(cells[a].hi[i], cells[b].hi[i], tol_) == 0;
                        }
                        if (!same) continue;
                        if (cmp(cells[a].hi[ax], cells[b].lo[ax], tol_) == 0) {
                            cells[a].hi[ax] = cells[b].hi[ax];
                        } else if (cmp(cells[b].hi[ax], cells[a].lo[ax], tol_) == 0) {
                            cells[a].lo[ax] = cells[b].lo[ax];
                        } else {
                            continue;
                        }
                        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(b));
                        merged = true;
                    }
                }
            }
        }
        // Face flags of the normal form follow `contains` at the face centre.
        const S two2 = ScalarTraits<S>::from_int(2);
        for (auto& cell : cells) {
            Point<S> mid(m_);
            for (std::size_t i = 0; i < m_; ++i) mid[i] = (cell.lo[i] + cell.hi[i]) / two2;
            for (std::size_t i = 0; i < m_; ++i) {
                auto p = mid;
                p[i] = cell.lo[i];
                cell.lo_closed[i] = contains(p);
                p[i] = cell.hi[i];
                cell.hi_closed[i] = contains(p);
            }
        }
        std::sort(cells.begin(), cells.end(), [this](const WindowBox<S>& x, const WindowBox<S>& y) {
            return lex_compare(x.lo, y.lo, tol_) < 0;
        });
        normal_ = std::move(cells);
    }

    std::size_t m_ = 0;
    double tol_ = 0.0;
    std::vector<WindowBox<S>> boxes_;
    std::vector<WindowBox<S>> normal_;
    std::vector<std::vector<S>> breaks_;
    std::vector<char> cell_in_;
};

template <Scalar S>
Window<S> interval_window(const S& a, const S& b, bool lo_closed = true, bool hi_closed = true, double tol = 0.0) {
    return Window<S>(1, {WindowBox<S>::interval(a, b, lo_closed, hi_closed)}, tol);
}

/// Searches for lattice points with physical coordinate in [-R, R]^d whose
/// star lies on the boundary of the window. PASS only certifies the probe box.
template <Scalar S>
Verdict<S> is_nonsingular(const Scheme<S>& scheme, const Window<S>& window, const S& probe_radius) {
    if (window.dim() != scheme.m) throw Error(ErrorKind::DimensionMismatch, "window and scheme dimensions differ");
    Verdict<S> v;
    v.check = "nonsingular";
    v.validity = Box<S>::centered(scheme.d, probe_radius);
    v.notes.push_back("non-singular up to physical radius " + ScalarTraits<S>::format(probe_radius));
    if (scheme.m == 0) {
        v.pass = true;
        return v;
    }
    const auto pts = lattice_points_in_box(scheme, window.bounding_box(), v.validity);
    std::vector<LatticePoint<S>> hits;
    for (const auto& p : pts) {
        if (window.membership(p.internal) == Membership::Boundary) hits.push_back(p);
    }
    const double tol = scheme.tol();
    std::stable_sort(hits.begin(), hits.end(), [tol](const LatticePoint<S>& a, const LatticePoint<S>& b) {
        return cmp(max_norm(a.physical, tol), max_norm(b.physical, tol), tol) < 0;
    });
    for (const auto& h : hits) {
        Witness<S> w;
        w.t1 = h.physical;
        w.t2 = h.internal;
        w.note = "lattice point with star on the window boundary";
        v.witnesses.push_back(std::move(w));
    }
    v.pass = hits.empty();
    return v;
}

}  // namespace meyerlab
