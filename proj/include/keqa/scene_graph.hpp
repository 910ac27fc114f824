#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "keqa/common.hpp"
#include "keqa/categories.hpp"

namespace keqa {

enum class SpatialRelation : std::uint8_t { Contain, In, Holding, On, Above, Below, Near };

constexpr std::array<SpatialRelation, 7> kAllRelations = {
    SpatialRelation::Contain, SpatialRelation::In,    SpatialRelation::Holding,
    SpatialRelation::On,      SpatialRelation::Above, SpatialRelation::Below,
    SpatialRelation::Near};

const char* to_string(SpatialRelation r);
std::optional<SpatialRelation> relation_from_string(const std::string& s);
SpatialRelation inverse(SpatialRelation r);

// A detected or ground-truth 3D object. For reconstructed objects, box is the
// coordinate-wise min/max of the member voxels' full cells.
struct SceneObject {
    std::int32_t object_id = -1;
    CategoryIdx category = -1;
    Box3 box;
    bool container = false;
    bool surface = false;
    std::vector<std::uint64_t> member_voxels;  // packed coords; empty for GT objects
    double mean_confidence = 1.0;
};

using RelationTriple = std::tuple<std::int32_t, SpatialRelation, std::int32_t>;

struct SceneGraph {
    std::vector<SceneObject> objects;
    std::set<RelationTriple> relations;

    const SceneObject* find(std::int32_t object_id) const {
        for (const auto& o : objects)
            if (o.object_id == object_id) return &o;
        return nullptr;
    }
    bool has_relation(std::int32_t subj, SpatialRelation r, std::int32_t obj) const {
        return relations.count({subj, r, obj}) > 0;
    }
};

struct RelationRuleConfig {
    double near_threshold = 0.25;
    double above_xy_band = 0.25;
    double on_epsilon = 0.05;
};

// The shared object-object relation rules:
//  - Contain/In: boxes overlap and the outer object is a container category.
//  - Holding/On: lower object is a surface category, XY footprints overlap,
//    and the upper object's bottom face sits within on_epsilon of its top face.
//  - Above/Below: XY footprints overlap or are within above_xy_band, and the
//    upper object's min z exceeds the lower object's max z.
//  - Near: 3D box distance below near_threshold, emitted symmetrically.
std::set<RelationTriple> derive_relations(const std::vector<SceneObject>& objects,
                                          const RelationRuleConfig& cfg);

// Shared dump format for ground-truth and reconstructed graphs, for diffing.
std::string scene_graph_to_json(const SceneGraph& graph, const CategoryTable& categories);
SceneGraph scene_graph_from_json(const std::string& text, const CategoryTable& categories);

}  // namespace keqa
