#include "keqa/recon.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace keqa::recon {

CategoryIdx LabeledVoxel::argmax() const {
    CategoryIdx best = -1;
    double best_score = -1.0;
    for (const auto& [cat, score] : category_scores) {
        if (score > best_score + 1e-12 ||
            (std::abs(score - best_score) <= 1e-12 && cat < best)) {
            best = cat;
            best_score = score;
        }
    }
    return best;
}

double LabeledVoxel::score_of(CategoryIdx c) const {
    for (const auto& [cat, score] : category_scores)
        if (cat == c) return score;
    return 0.0;
}

void LabeledVoxel::accumulate(CategoryIdx c, double confidence) {
    for (auto& [cat, score] : category_scores) {
        if (cat == c) {
            score += confidence;
            return;
        }
    }
    category_scores.emplace_back(c, confidence);
}

std::vector<BackprojectedVoxel> backproject(const scene::Observation& obs,
                                            const scene::Viewport& viewport,
                                            const GridSpec& spec, const CameraConfig& cam) {
    std::vector<BackprojectedVoxel> out;
    scene::CameraBasis basis = scene::camera_basis(viewport, cam);
    for (int row = 0; row < obs.height; ++row) {
        for (int col = 0; col < obs.width; ++col) {
            std::size_t px = obs.at(col, row);
            if (obs.category[px] < 0) continue;
            Vec3 dir = scene::pixel_ray(basis, col, row, obs.width, obs.height);
            Vec3 point = basis.eye + dir * static_cast<double>(obs.depth[px]);
            Vec3i coord = spec.coord_of(point);
            if (!spec.in_bounds(coord)) continue;
            out.push_back({coord, obs.category[px], obs.confidence[px]});
        }
    }
    return out;
}

void StateMemory::fuse(const std::vector<BackprojectedVoxel>& voxels,
                       const std::vector<std::size_t>& visible_indices) {
    if (!voxels.empty()) graph_dirty_ = true;  // confidences move even when labels don't
    for (const auto& bp : voxels) {
        std::uint64_t key = pack_coord(bp.coord);
        auto it = grid_.find(key);
        if (it == grid_.end()) {
            LabeledVoxel v;
            v.coord = bp.coord;
            v.accumulate(bp.category, bp.confidence);
            v.observed_count = 1;
            grid_.emplace(key, std::move(v));
            dirty_.push_back(key);
            graph_dirty_ = true;
        } else {
            CategoryIdx before = it->second.argmax();
            it->second.accumulate(bp.category, bp.confidence);
            it->second.observed_count += 1;
            if (it->second.argmax() != before) {
                dirty_.push_back(key);
                graph_dirty_ = true;
            }
        }
    }
    for (std::size_t idx : visible_indices) observed_.set(idx);
}

std::vector<std::vector<std::uint64_t>> cluster_voxel_set(
    const std::vector<std::pair<std::uint64_t, CategoryIdx>>& voxels, double link_distance,
    double resolution) {
    const std::size_t n = voxels.size();
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) index[voxels[i].first] = i;

    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    const int radius = static_cast<int>(std::floor(link_distance / resolution + 1e-9));
    const double link2 = (link_distance / resolution) * (link_distance / resolution) + 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        Vec3i c = unpack_coord(voxels[i].first);
        for (int dz = -radius; dz <= radius; ++dz) {
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    if (dx * dx + dy * dy + dz * dz > link2) continue;
                    auto it = index.find(pack_coord(c + Vec3i(dx, dy, dz)));
                    if (it == index.end()) continue;
                    if (voxels[it->second].second != voxels[i].second) continue;
                    unite(i, it->second);
                }
            }
        }
    }

    std::unordered_map<std::size_t, std::vector<std::uint64_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(voxels[i].first);
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    // Deterministic component order regardless of hash iteration.
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<SceneObject> objects_from_components(
    const std::vector<std::vector<std::uint64_t>>& comps,
    const std::unordered_map<std::uint64_t, LabeledVoxel>& grid, const GridSpec& spec,
    int min_voxels, const CategoryTable& categories) {
    std::vector<SceneObject> objects;
    for (const auto& comp : comps) {
        if (static_cast<int>(comp.size()) < min_voxels) continue;
        SceneObject obj;
        Vec3i lo = unpack_coord(comp.front());
        Vec3i hi = lo;
        double conf_sum = 0.0;
        for (std::uint64_t key : comp) {
            Vec3i c = unpack_coord(key);
            lo = lo.cwiseMin(c);
            hi = hi.cwiseMax(c);
            const LabeledVoxel& v = grid.at(key);
            conf_sum += v.score_of(v.argmax()) / std::max(1, v.observed_count);
        }
        const LabeledVoxel& first = grid.at(comp.front());
        obj.category = first.argmax();
        obj.box = Box3(lo.cast<double>() * spec.resolution,
                       (hi.cast<double>() + Vec3(1, 1, 1)) * spec.resolution);
        obj.member_voxels = comp;
        obj.mean_confidence = conf_sum / static_cast<double>(comp.size());
        const auto& info = categories.info(obj.category);
        obj.container = info.container;
        obj.surface = info.surface;
        objects.push_back(std::move(obj));
    }
    std::sort(objects.begin(), objects.end(), [](const SceneObject& a, const SceneObject& b) {
        if (a.category != b.category) return a.category < b.category;
        return a.member_voxels.front() < b.member_voxels.front();
    });
    for (std::size_t i = 0; i < objects.size(); ++i)
        objects[i].object_id = static_cast<std::int32_t>(i);
    return objects;
}

std::vector<SceneObject> cluster_objects(const StateMemory& state, double link_distance,
                                         int min_voxels, const CategoryTable& categories) {
    std::vector<std::pair<std::uint64_t, CategoryIdx>> voxels;
    voxels.reserve(state.grid().size());
    for (const auto& [key, v] : state.grid()) {
        if (v.observed_count > 0) voxels.emplace_back(key, v.argmax());
    }
    std::sort(voxels.begin(), voxels.end());
    auto comps = cluster_voxel_set(voxels, link_distance, state.spec().resolution);
    return objects_from_components(comps, state.grid(), state.spec(), min_voxels, categories);
}

void StateMemory::rebuild_components(double link_distance) {
    if (built_link_distance_ != link_distance) {
        // Parameter change invalidates the incremental state entirely.
        comps_.clear();
        comp_of_.clear();
        dirty_.clear();
        std::vector<std::pair<std::uint64_t, CategoryIdx>> voxels;
        voxels.reserve(grid_.size());
        for (const auto& [key, v] : grid_) voxels.emplace_back(key, v.argmax());
        std::sort(voxels.begin(), voxels.end());
        auto groups = cluster_voxel_set(voxels, link_distance, spec_.resolution);
        for (auto& g : groups) {
            std::int32_t id = static_cast<std::int32_t>(comps_.size());
            for (auto key : g) comp_of_[key] = id;
            comps_.push_back({std::move(g)});
        }
        built_link_distance_ = link_distance;
        return;
    }
    if (dirty_.empty()) return;

    // Components owning a dirty voxel, or owning any voxel within link range of
    // one, must be re-clustered; everything else is untouched.
    const int radius = static_cast<int>(std::floor(link_distance / spec_.resolution + 1e-9));
    const double link2 = (link_distance / spec_.resolution) * (link_distance / spec_.resolution) + 1e-9;
    std::set<std::int32_t> affected;
    std::set<std::uint64_t> rebuild_keys;
    for (std::uint64_t key : dirty_) {
        rebuild_keys.insert(key);
        auto self = comp_of_.find(key);
        if (self != comp_of_.end()) affected.insert(self->second);
        Vec3i c = unpack_coord(key);
        for (int dz = -radius; dz <= radius; ++dz)
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (dx * dx + dy * dy + dz * dz > link2) continue;
                    auto it = comp_of_.find(pack_coord(c + Vec3i(dx, dy, dz)));
                    if (it != comp_of_.end()) affected.insert(it->second);
                }
    }
    for (std::int32_t id : affected)
        for (std::uint64_t key : comps_[id].voxels) rebuild_keys.insert(key);

    std::vector<std::pair<std::uint64_t, CategoryIdx>> voxels;
    voxels.reserve(rebuild_keys.size());
    for (std::uint64_t key : rebuild_keys) {
        auto it = grid_.find(key);
        if (it != grid_.end()) voxels.emplace_back(key, it->second.argmax());
    }
    auto groups = cluster_voxel_set(voxels, link_distance, spec_.resolution);

    // Drop affected components (swap-erase, fixing up moved ids).
    std::vector<std::int32_t> to_drop(affected.begin(), affected.end());
    std::sort(to_drop.rbegin(), to_drop.rend());
    for (std::int32_t id : to_drop) {
        for (std::uint64_t key : comps_[id].voxels) comp_of_.erase(key);
        std::int32_t last = static_cast<std::int32_t>(comps_.size()) - 1;
        if (id != last) {
            comps_[id] = std::move(comps_[last]);
            for (std::uint64_t key : comps_[id].voxels) comp_of_[key] = id;
        }
        comps_.pop_back();
    }
    for (auto& g : groups) {
        std::int32_t id = static_cast<std::int32_t>(comps_.size());
        for (auto key : g) comp_of_[key] = id;
        comps_.push_back({std::move(g)});
    }
    dirty_.clear();
}

const SceneGraph& StateMemory::scene_graph(const ReconConfig& cfg,
                                           const CategoryTable& categories) {
    if (!graph_dirty_ && built_link_distance_ == cfg.link_distance) return graph_;
    rebuild_components(cfg.link_distance);
    std::vector<std::vector<std::uint64_t>> groups;
    groups.reserve(comps_.size());
    for (const auto& c : comps_) groups.push_back(c.voxels);
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    graph_.objects = objects_from_components(groups, grid_, spec_, cfg.min_voxels, categories);
    RelationRuleConfig rules{cfg.near_threshold, cfg.above_xy_band, cfg.on_epsilon};
    graph_.relations = derive_relations(graph_.objects, rules);
    graph_dirty_ = false;
    return graph_;
}

scene::VoxelWorld StateMemory::belief_world() const {
    scene::VoxelWorld world;
    world.spec = spec_;
    world.occupied.assign(spec_.cell_count(), 0);
    world.owner.assign(spec_.cell_count(), -1);
    for (const auto& [key, v] : grid_) {
        Vec3i c = unpack_coord(key);
        if (spec_.in_bounds(c)) world.occupied[spec_.index_of(c)] = 1;
    }
    return world;
}

}  // namespace keqa::recon
