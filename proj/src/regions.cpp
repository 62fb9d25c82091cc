#include "bulletin/regions.hpp"

#include "bulletin/lattice.hpp"

#include <algorithm>
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

int ruling_segments_in(const PageModel& page, const BBox& region) {
    int n = 0;
    for (const RulingLine& l : page.lines)
        if (l.bbox().intersects(region)) ++n;
    return n;
}

} // namespace

std::vector<ResolvedRegion> propose_regions_heuristic(const PageModel& page, double gap) {
    const auto& runs = page.runs;
    if (runs.empty()) return {};
    UnionFind uf(runs.size());
    for (size_t i = 0; i < runs.size(); ++i) {
        BBox a = runs[i].bbox.inflated(gap / 2);
        for (size_t j = i + 1; j < runs.size(); ++j)
            if (a.intersects(runs[j].bbox.inflated(gap / 2))) uf.unite(i, j);
    }
    std::vector<int> count(runs.size(), 0);
    std::vector<BBox> boxes(runs.size());
    for (size_t i = 0; i < runs.size(); ++i) {
        size_t r = uf.find(i);
        boxes[r] = count[r] ? bbox_union(boxes[r], runs[i].bbox) : runs[i].bbox;
        ++count[r];
    }
    std::vector<ResolvedRegion> out;
    for (size_t i = 0; i < runs.size(); ++i)
        if (uf.find(i) == i && count[i] >= 4)
            out.push_back(ResolvedRegion{boxes[i], RegionOrigin::heuristic, page.page_index});
    std::sort(out.begin(), out.end(), [](const ResolvedRegion& a, const ResolvedRegion& b) {
        return std::pair(a.region.y0, a.region.x0) < std::pair(b.region.y0, b.region.x0);
    });
    return out;
}

std::vector<ResolvedRegion> resolve_hints(const std::vector<RegionHint>& hints,
                                          const PageModel& page) {
    std::vector<RegionHint> mine;
    for (const RegionHint& h : hints)
        if (h.page_index == page.page_index && h.region.area() > 0) mine.push_back(h);
    // Duplicate suppression: external detectors emit near-identical boxes.
    std::sort(mine.begin(), mine.end(),
              [](const RegionHint& a, const RegionHint& b) { return a.confidence > b.confidence; });
    std::vector<RegionHint> kept;
    for (const RegionHint& h : mine) {
        bool dup = std::any_of(kept.begin(), kept.end(), [&](const RegionHint& k) {
            return intersection_over_union(k.region, h.region) > 0.5;
        });
        if (!dup) kept.push_back(h);
    }
    std::sort(kept.begin(), kept.end(), [](const RegionHint& a, const RegionHint& b) {
        return std::pair(a.region.y0, a.region.x0) < std::pair(b.region.y0, b.region.x0);
    });
    std::vector<ResolvedRegion> out;
    out.reserve(kept.size());
    for (const RegionHint& h : kept)
        out.push_back(ResolvedRegion{h.region, h.origin, h.page_index});
    return out;
}

std::vector<TableGrid> detect_with_regions(const PageModel& page,
                                           const std::vector<ResolvedRegion>& regions,
                                           const DetectorParams& params) {
    std::vector<TableGrid> out;
    for (const ResolvedRegion& rr : regions) {
        std::vector<TableGrid> grids;
        if (ruling_segments_in(page, rr.region) >= params.lattice_min_segments)
            grids = detect_lattice(page, params.snap_tol, rr.region);
        else
            grids = detect_stream(page, rr.region, params.stream);
        for (TableGrid& g : grids) {
            g.region_source = rr.source;
            out.push_back(std::move(g));
        }
    }
    return out;
}

std::vector<TableGrid> detect_page(const PageModel& page, const DetectorParams& params) {
    std::vector<TableGrid> grids = detect_lattice(page, params.snap_tol);

    // Stream pass over whatever text no ruled grid claimed.
    PageModel rest;
    rest.page_index = page.page_index;
    rest.width = page.width;
    rest.height = page.height;
    std::vector<size_t> kept;
    for (size_t i = 0; i < page.runs.size(); ++i) {
        const BBox& b = page.runs[i].bbox;
        bool claimed = std::any_of(grids.begin(), grids.end(), [&](const TableGrid& g) {
            return g.region.contains(b.cx(), b.cy());
        });
        if (!claimed) {
            kept.push_back(i);
            rest.runs.push_back(page.runs[i]);
        }
    }
    std::vector<TableGrid> streamed = detect_stream(rest, std::nullopt, params.stream);
    for (TableGrid& g : streamed) {
        for (Cell& c : g.cells)
            for (size_t& id : c.source_runs) id = kept[id];
        grids.push_back(std::move(g));
    }
    std::sort(grids.begin(), grids.end(), [](const TableGrid& a, const TableGrid& b) {
        return std::pair(a.region.y0, a.region.x0) < std::pair(b.region.y0, b.region.x0);
    });
    return grids;
}

} // namespace bulletin
