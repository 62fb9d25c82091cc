#include "bulletin/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace bulletin {

namespace {

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

// Interval index for coordinate c in sorted boundary positions; exact
// boundary hits resolve to the left/upper interval.
int interval_of(const std::vector<double>& pos, double c) {
    if (pos.size() < 2 || c < pos.front() || c > pos.back()) return -1;
    auto it = std::lower_bound(pos.begin(), pos.end(), c);
    size_t idx = static_cast<size_t>(it - pos.begin());
    if (idx == 0) return 0;
    return static_cast<int>(idx) - 1;
}

bool segments_touch(const RulingLine& a, const RulingLine& b, double tol) {
    if (a.axis == b.axis) {
        if (std::fabs(a.position - b.position) > tol) return false;
        return a.start <= b.end + tol && b.start <= a.end + tol;
    }
    const RulingLine& h = a.axis == Axis::horizontal ? a : b;
    const RulingLine& v = a.axis == Axis::horizontal ? b : a;
    return v.position >= h.start - tol && v.position <= h.end + tol &&
           h.position >= v.start - tol && h.position <= v.end + tol;
}

struct EdgeMatrix {
    // hseg[i][j]: horizontal edge at ys[i] spanning [xs[j], xs[j+1]]
    // vseg[j][i]: vertical edge at xs[j] spanning [ys[i], ys[i+1]]
    std::vector<std::vector<bool>> hseg, vseg;
};

EdgeMatrix build_edges(const GridSkeleton& sk, const std::vector<RulingLine>& lines,
                       double tol) {
    EdgeMatrix em;
    size_t nx = sk.xs.size(), ny = sk.ys.size();
    em.hseg.assign(ny, std::vector<bool>(nx ? nx - 1 : 0, false));
    em.vseg.assign(nx, std::vector<bool>(ny ? ny - 1 : 0, false));
    for (const RulingLine& l : lines) {
        if (l.axis == Axis::horizontal) {
            auto it = std::lower_bound(sk.ys.begin(), sk.ys.end(), l.position - tol);
            if (it == sk.ys.end() || std::fabs(*it - l.position) > tol) continue;
            size_t i = static_cast<size_t>(it - sk.ys.begin());
            for (size_t j = 0; j + 1 < nx; ++j)
                if (l.start <= sk.xs[j] + tol && l.end >= sk.xs[j + 1] - tol)
                    em.hseg[i][j] = true;
        } else {
            auto it = std::lower_bound(sk.xs.begin(), sk.xs.end(), l.position - tol);
            if (it == sk.xs.end() || std::fabs(*it - l.position) > tol) continue;
            size_t j = static_cast<size_t>(it - sk.xs.begin());
            for (size_t i = 0; i + 1 < ny; ++i)
                if (l.start <= sk.ys[i] + tol && l.end >= sk.ys[i + 1] - tol)
                    em.vseg[j][i] = true;
        }
    }
    return em;
}

} // namespace

std::vector<RulingLine> merge_lines(const std::vector<RulingLine>& lines, double snap_tol) {
    std::vector<RulingLine> out;
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<RulingLine> pool;
        for (const RulingLine& l : lines)
            if (static_cast<int>(l.axis) == axis) pool.push_back(l);
        if (pool.empty()) continue;

        // Chains positions within snap_tol into clusters; each cluster
        // snaps to its mean.
        std::sort(pool.begin(), pool.end(), [](const RulingLine& a, const RulingLine& b) {
            return std::pair(a.position, a.start) < std::pair(b.position, b.start);
        });
        size_t i = 0;
        while (i < pool.size()) {
            size_t j = i + 1;
            double sum = pool[i].position;
            while (j < pool.size() && pool[j].position - pool[j - 1].position <= snap_tol)
                sum += pool[j++].position;
            double canonical = sum / static_cast<double>(j - i);

            std::vector<RulingLine> segs(pool.begin() + static_cast<long>(i),
                                         pool.begin() + static_cast<long>(j));
            for (RulingLine& s : segs) s.position = canonical;
            std::sort(segs.begin(), segs.end(),
                      [](const RulingLine& a, const RulingLine& b) { return a.start < b.start; });
            RulingLine cur = segs.front();
            for (size_t k = 1; k < segs.size(); ++k) {
                const RulingLine& s = segs[k];
                if (s.start - cur.end <= 3 * snap_tol) {
                    cur.end = std::max(cur.end, s.end);
                    cur.thickness = std::max(cur.thickness, s.thickness);
                } else {
                    out.push_back(cur);
                    cur = s;
                }
            }
            out.push_back(cur);
            i = j;
        }
    }
    std::sort(out.begin(), out.end(), [](const RulingLine& a, const RulingLine& b) {
        return std::tuple(static_cast<int>(a.axis), a.position, a.start) <
               std::tuple(static_cast<int>(b.axis), b.position, b.start);
    });
    return out;
}

std::vector<TableGrid> detect_lattice(const PageModel& page, double snap_tol,
                                      std::optional<BBox> region) {
    std::vector<RulingLine> candidates;
    for (const RulingLine& l : page.lines) {
        if (region && !l.bbox().intersects(*region)) continue;
        RulingLine c = l;
        if (region) { // clips to the constraining region
            double lo = l.axis == Axis::horizontal ? region->x0 : region->y0;
            double hi = l.axis == Axis::horizontal ? region->x1 : region->y1;
            c.start = std::max(c.start, lo);
            c.end = std::min(c.end, hi);
            if (c.end - c.start <= 0) continue;
        }
        candidates.push_back(c);
    }
    std::vector<RulingLine> merged = merge_lines(candidates, snap_tol);
    if (merged.empty()) return {};

    UnionFind uf(merged.size());
    for (size_t i = 0; i < merged.size(); ++i)
        for (size_t j = i + 1; j < merged.size(); ++j)
            if (segments_touch(merged[i], merged[j], snap_tol)) uf.unite(i, j);

    std::map<size_t, std::vector<size_t>> components;
    for (size_t i = 0; i < merged.size(); ++i) components[uf.find(i)].push_back(i);

    std::vector<TableGrid> grids;
    for (auto& [root, members] : components) {
        GridSkeleton sk;
        std::vector<RulingLine> comp;
        for (size_t idx : members) {
            const RulingLine& l = merged[idx];
            comp.push_back(l);
            if (l.axis == Axis::horizontal) sk.ys.push_back(l.position);
            else sk.xs.push_back(l.position);
        }
        auto uniq = [](std::vector<double>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(sk.xs);
        uniq(sk.ys);
        int n_rows = static_cast<int>(sk.ys.size()) - 1;
        int n_cols = static_cast<int>(sk.xs.size()) - 1;
        if (n_rows < 2 || n_cols < 2) continue; // banners, not tables

        EdgeMatrix em = build_edges(sk, comp, snap_tol);
        sk.joint.assign(sk.ys.size(), std::vector<bool>(sk.xs.size(), false));
        for (size_t i = 0; i < sk.ys.size(); ++i)
            for (size_t j = 0; j < sk.xs.size(); ++j) {
                bool h = (j > 0 && em.hseg[i][j - 1]) ||
                         (j + 1 < sk.xs.size() && em.hseg[i][j]);
                bool v = (i > 0 && em.vseg[j][i - 1]) ||
                         (i + 1 < sk.ys.size() && em.vseg[j][i]);
                sk.joint[i][j] = h || v;
            }

        TableGrid grid;
        grid.method = DetectMethod::lattice;
        grid.n_rows = n_rows;
        grid.n_cols = n_cols;
        grid.region = BBox{sk.xs.front(), sk.ys.front(), sk.xs.back(), sk.ys.back()};

        // Rectangular span growth from each unassigned anchor: extend
        // right across missing vertical edges on the anchor row, then down
        // while the horizontal edge under the whole span stays missing and
        // the span's side walls are present.
        std::vector<std::vector<bool>> assigned(
            static_cast<size_t>(n_rows), std::vector<bool>(static_cast<size_t>(n_cols), false));
        auto vedge = [&](int col_boundary, int row) {
            return em.vseg[static_cast<size_t>(col_boundary)][static_cast<size_t>(row)];
        };
        auto hedge = [&](int row_boundary, int col) {
            return em.hseg[static_cast<size_t>(row_boundary)][static_cast<size_t>(col)];
        };
        for (int r = 0; r < n_rows; ++r) {
            for (int c = 0; c < n_cols; ++c) {
                if (assigned[static_cast<size_t>(r)][static_cast<size_t>(c)]) continue;
                int cs = 1;
                while (c + cs < n_cols && !vedge(c + cs, r) &&
                       !assigned[static_cast<size_t>(r)][static_cast<size_t>(c + cs)])
                    ++cs;
                int rs = 1;
                while (r + rs < n_rows) {
                    bool joined = true;
                    for (int k = c; k < c + cs && joined; ++k)
                        if (hedge(r + rs, k) ||
                            assigned[static_cast<size_t>(r + rs)][static_cast<size_t>(k)])
                            joined = false;
                    for (int k = c + 1; k < c + cs && joined; ++k)
                        if (vedge(k, r + rs)) joined = false;
                    if (joined && c + cs < n_cols && !vedge(c + cs, r + rs)) joined = false;
                    if (joined && c > 0 && !vedge(c, r + rs)) joined = false;
                    if (!joined) break;
                    ++rs;
                }
                for (int rr = r; rr < r + rs; ++rr)
                    for (int cc = c; cc < c + cs; ++cc)
                        assigned[static_cast<size_t>(rr)][static_cast<size_t>(cc)] = true;
                Cell cell;
                cell.row = r;
                cell.col = c;
                cell.row_span = rs;
                cell.col_span = cs;
                grid.cells.push_back(cell);
            }
        }

        // Run-to-cell assignment by center point.
        struct Placed {
            size_t run;
            double cy, x0;
        };
        std::map<std::pair<int, int>, std::vector<Placed>> cell_runs;
        for (size_t ri = 0; ri < page.runs.size(); ++ri) {
            const TextRun& run = page.runs[ri];
            if (region && !region->contains(run.bbox.cx(), run.bbox.cy())) continue;
            int col = interval_of(sk.xs, run.bbox.cx());
            int row = interval_of(sk.ys, run.bbox.cy());
            if (col < 0 || row < 0) continue;
            cell_runs[{row, col}].push_back(Placed{ri, run.bbox.cy(), run.bbox.x0});
        }
        for (Cell& cell : grid.cells) {
            std::vector<Placed> collected;
            for (int rr = cell.row; rr < cell.row + cell.row_span; ++rr)
                for (int cc = cell.col; cc < cell.col + cell.col_span; ++cc) {
                    auto it = cell_runs.find({rr, cc});
                    if (it != cell_runs.end())
                        collected.insert(collected.end(), it->second.begin(), it->second.end());
                }
            std::sort(collected.begin(), collected.end(), [](const Placed& a, const Placed& b) {
                return std::tuple(a.cy, a.x0, a.run) < std::tuple(b.cy, b.x0, b.run);
            });
            for (const Placed& p : collected) {
                if (!cell.text.empty()) cell.text += " ";
                cell.text += page.runs[p.run].text;
                cell.source_runs.push_back(p.run);
            }
        }
        grids.push_back(std::move(grid));
    }

    std::sort(grids.begin(), grids.end(), [](const TableGrid& a, const TableGrid& b) {
        return std::pair(a.region.y0, a.region.x0) < std::pair(b.region.y0, b.region.x0);
    });
    return grids;
}

} // namespace bulletin
