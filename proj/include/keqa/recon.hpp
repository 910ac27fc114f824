#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "keqa/categories.hpp"
#include "keqa/common.hpp"
#include "keqa/config.hpp"
#include "keqa/scene.hpp"
#include "keqa/scene_graph.hpp"

namespace keqa::recon {

struct LabeledVoxel {
    Vec3i coord;
    std::vector<std::pair<CategoryIdx, double>> category_scores;  // accumulated confidence
    int observed_count = 0;

    // Highest accumulated score; ties broken toward the lower category id.
    CategoryIdx argmax() const;
    double score_of(CategoryIdx c) const;
    void accumulate(CategoryIdx c, double confidence);
};

struct BackprojectedVoxel {
    Vec3i coord;
    CategoryIdx category = -1;
    double confidence = 0.0;
};

// Maps every labeled pixel through its depth to one voxel; out-of-room hits dropped.
std::vector<BackprojectedVoxel> backproject(const scene::Observation& obs,
                                            const scene::Viewport& viewport,
                                            const GridSpec& spec, const CameraConfig& cam);

// The agent's persistent reconstruction: labeled voxels + observed space +
// the scene graph derived from them. One logical writer per episode.
class StateMemory {
public:
    StateMemory() = default;
    StateMemory(const GridSpec& spec) : spec_(spec), observed_(spec.cell_count()) {}

    const GridSpec& spec() const { return spec_; }
    const Bitset& observed_voxels() const { return observed_; }
    const std::unordered_map<std::uint64_t, LabeledVoxel>& grid() const { return grid_; }
    int turn_index() const { return turn_index_; }
    void next_turn() { ++turn_index_; }

    // Additive score fusion plus frustum-visible free-space marking.
    void fuse(const std::vector<BackprojectedVoxel>& voxels,
              const std::vector<std::size_t>& visible_indices);

    // Reconstructed graph; incrementally re-clusters regions touched since the
    // last call and must equal clustering from scratch.
    const SceneGraph& scene_graph(const ReconConfig& cfg, const CategoryTable& categories);

    // Occupancy the planner may raycast against: every labeled voxel is solid.
    scene::VoxelWorld belief_world() const;

    std::size_t labeled_count() const { return grid_.size(); }

private:
    GridSpec spec_;
    std::unordered_map<std::uint64_t, LabeledVoxel> grid_;
    Bitset observed_;
    int turn_index_ = 0;

    struct Component {
        std::vector<std::uint64_t> voxels;
    };
    std::vector<Component> comps_;
    std::unordered_map<std::uint64_t, std::int32_t> comp_of_;
    std::vector<std::uint64_t> dirty_;
    bool graph_dirty_ = true;
    double built_link_distance_ = -1;
    SceneGraph graph_;

    void rebuild_components(double link_distance);
};

// Connected components over same-argmax-category voxels within link_distance
// (center-to-center); components below min_voxels are dropped. Pure, full pass.
std::vector<SceneObject> cluster_objects(const StateMemory& state, double link_distance,
                                         int min_voxels, const CategoryTable& categories);

// Helper shared by the full and incremental paths: clusters an explicit voxel
// set given as (packed coord, category) pairs; returns groups of packed coords.
std::vector<std::vector<std::uint64_t>> cluster_voxel_set(
    const std::vector<std::pair<std::uint64_t, CategoryIdx>>& voxels, double link_distance,
    double resolution);

// Builds SceneObjects from final components (>= min_voxels), ids assigned in a
// deterministic order, boxes as full-cell min/max extents.
std::vector<SceneObject> objects_from_components(
    const std::vector<std::vector<std::uint64_t>>& comps,
    const std::unordered_map<std::uint64_t, LabeledVoxel>& grid, const GridSpec& spec,
    int min_voxels, const CategoryTable& categories);

}  // namespace keqa::recon
