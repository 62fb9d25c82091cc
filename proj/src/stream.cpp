#include "bulletin/stream.hpp"

#include <algorithm>
#include <cmath>
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

// Sorts ids geometrically so the result is independent of input order.
std::vector<size_t> canonical_order(const PageModel& page, std::vector<size_t> ids) {
    std::sort(ids.begin(), ids.end(), [&](size_t a, size_t b) {
        const BBox& ba = page.runs[a].bbox;
        const BBox& bb = page.runs[b].bbox;
        return std::tuple(ba.y0, ba.x0, ba.x1, page.runs[a].text) <
               std::tuple(bb.y0, bb.x0, bb.x1, page.runs[b].text);
    });
    return ids;
}

} // namespace

std::vector<RowBand> cluster_rows(const PageModel& page,
                                  const std::vector<std::size_t>& run_ids,
                                  double row_overlap_min) {
    std::vector<size_t> ids = canonical_order(page, run_ids);
    if (ids.empty()) return {};
    UnionFind uf(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) {
        const BBox& a = page.runs[ids[i]].bbox;
        for (size_t j = i + 1; j < ids.size(); ++j) {
            const BBox& b = page.runs[ids[j]].bbox;
            if (b.y0 > a.y1) break; // sorted by y0: nothing below can overlap
            if (vertical_overlap_ratio(a, b) >= row_overlap_min) uf.unite(i, j);
        }
    }
    std::vector<RowBand> bands(ids.size());
    std::vector<int> band_of(ids.size(), -1);
    int next = 0;
    for (size_t i = 0; i < ids.size(); ++i) {
        size_t root = uf.find(i);
        if (band_of[root] < 0) band_of[root] = next++;
        RowBand& band = bands[static_cast<size_t>(band_of[root])];
        const BBox& box = page.runs[ids[i]].bbox;
        if (band.runs.empty()) {
            band.y0 = box.y0;
            band.y1 = box.y1;
        } else {
            band.y0 = std::min(band.y0, box.y0);
            band.y1 = std::max(band.y1, box.y1);
        }
        band.runs.push_back(ids[i]);
    }
    bands.resize(static_cast<size_t>(next));
    for (RowBand& band : bands)
        std::sort(band.runs.begin(), band.runs.end(), [&](size_t a, size_t b) {
            return std::pair(page.runs[a].bbox.x0, a) < std::pair(page.runs[b].bbox.x0, b);
        });
    std::sort(bands.begin(), bands.end(), [](const RowBand& a, const RowBand& b) {
        return std::pair(a.y0, a.y1) < std::pair(b.y0, b.y1);
    });
    return bands;
}

std::vector<double> find_column_cuts(const PageModel& page,
                                     const std::vector<RowBand>& bands,
                                     const StreamParams& params) {
    if (bands.empty()) return {};
    double xmin = 1e300, xmax = -1e300;
    for (const RowBand& b : bands)
        for (size_t id : b.runs) {
            xmin = std::min(xmin, page.runs[id].bbox.x0);
            xmax = std::max(xmax, page.runs[id].bbox.x1);
        }
    if (xmax - xmin < params.min_gap) return {};

    // Coverage step function over x: how many bands have ink at x. Runs
    // shrink by cross_tol per side: poking that far across a cut is fine.
    struct Event {
        double x;
        int delta;
    };
    std::vector<Event> events;
    for (const RowBand& b : bands) {
        std::vector<std::pair<double, double>> ivals;
        for (size_t id : b.runs) {
            double a = page.runs[id].bbox.x0 + params.cross_tol;
            double z = page.runs[id].bbox.x1 - params.cross_tol;
            if (z > a) ivals.emplace_back(a, z);
        }
        std::sort(ivals.begin(), ivals.end());
        // Merges per band so a band counts once.
        size_t i = 0;
        while (i < ivals.size()) {
            double a = ivals[i].first, z = ivals[i].second;
            size_t j = i + 1;
            while (j < ivals.size() && ivals[j].first <= z) {
                z = std::max(z, ivals[j].second);
                ++j;
            }
            events.push_back(Event{a, +1});
            events.push_back(Event{z, -1});
            i = j;
        }
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.x < b.x; });

    double n_bands = static_cast<double>(bands.size());
    auto qualifies = [&](int covered) {
        double clear = n_bands - covered;
        return clear + 1e-9 >= params.coverage_min * n_bands;
    };

    // Walks segments between events, accumulating maximal qualifying spans.
    std::vector<std::pair<double, double>> channels;
    int covered = 0;
    bool open = qualifies(0);
    double open_start = xmin;
    size_t ei = 0;
    while (ei < events.size()) {
        int delta = 0;
        double ex = events[ei].x;
        while (ei < events.size() && events[ei].x == ex) delta += events[ei++].delta;
        bool was = qualifies(covered);
        covered += delta;
        bool now = qualifies(covered);
        if (was && !now) {
            if (open) channels.emplace_back(open_start, ex);
            open = false;
        } else if (!was && now) {
            open = true;
            open_start = ex;
        }
    }
    if (open) channels.emplace_back(open_start, xmax);

    std::vector<double> cuts;
    const double edge_eps = 1e-6;
    for (auto& [a, z] : channels) {
        double lo = std::max(a, xmin), hi = std::min(z, xmax);
        if (hi - lo < params.min_gap) continue;
        // A channel hugging the text extent separates nothing.
        if (lo <= xmin + edge_eps || hi >= xmax - edge_eps) continue;
        cuts.push_back((lo + hi) / 2);
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

std::vector<TableGrid> detect_stream(const PageModel& page, std::optional<BBox> region,
                                     const StreamParams& params) {
    std::vector<size_t> ids;
    for (size_t i = 0; i < page.runs.size(); ++i) {
        const BBox& b = page.runs[i].bbox;
        if (region && !region->contains(b.cx(), b.cy())) continue;
        if (page.runs[i].text.empty()) continue;
        ids.push_back(i);
    }
    std::vector<RowBand> bands = cluster_rows(page, ids, params.row_overlap_min);

    std::vector<TableGrid> grids;
    size_t start = 0;
    for (size_t i = 1; i <= bands.size(); ++i) {
        bool split = i == bands.size() || bands[i].y0 - bands[i - 1].y1 > params.block_gap;
        if (!split) continue;
        std::vector<RowBand> block(bands.begin() + static_cast<long>(start),
                                   bands.begin() + static_cast<long>(i));
        start = i;
        if (block.size() < 2) continue;
        std::vector<double> cuts = find_column_cuts(page, block, params);
        if (cuts.empty()) continue; // fewer than 2 columns

        TableGrid grid;
        grid.method = DetectMethod::stream;
        grid.n_rows = static_cast<int>(block.size());
        grid.n_cols = static_cast<int>(cuts.size()) + 1;
        bool first = true;
        for (size_t r = 0; r < block.size(); ++r) {
            std::vector<std::vector<size_t>> per_col(static_cast<size_t>(grid.n_cols));
            for (size_t id : block[r].runs) {
                double cx = page.runs[id].bbox.cx();
                // Boundary ties go to the left column.
                size_t col = static_cast<size_t>(
                    std::lower_bound(cuts.begin(), cuts.end(), cx) - cuts.begin());
                per_col[col].push_back(id);
                if (first) {
                    grid.region = page.runs[id].bbox;
                    first = false;
                } else {
                    grid.region = bbox_union(grid.region, page.runs[id].bbox);
                }
            }
            for (int c = 0; c < grid.n_cols; ++c) {
                Cell cell;
                cell.row = static_cast<int>(r);
                cell.col = c;
                for (size_t id : per_col[static_cast<size_t>(c)]) {
                    if (!cell.text.empty()) cell.text += " ";
                    cell.text += page.runs[id].text;
                    cell.source_runs.push_back(id);
                }
                grid.cells.push_back(std::move(cell));
            }
        }
        grids.push_back(std::move(grid));
    }
    return grids;
}

} // namespace bulletin
