#include "keqa/scene_graph.hpp"

#include <json.hpp>

namespace keqa {

using nlohmann::json;

const char* to_string(SpatialRelation r) {
    switch (r) {
        case SpatialRelation::Contain: return "contain";
        case SpatialRelation::In: return "in";
        case SpatialRelation::Holding: return "holding";
        case SpatialRelation::On: return "on";
        case SpatialRelation::Above: return "above";
        case SpatialRelation::Below: return "below";
        case SpatialRelation::Near: return "near";
    }
    return "?";
}

std::optional<SpatialRelation> relation_from_string(const std::string& s) {
    for (auto r : kAllRelations)
        if (s == to_string(r)) return r;
    return std::nullopt;
}

SpatialRelation inverse(SpatialRelation r) {
    switch (r) {
        case SpatialRelation::Contain: return SpatialRelation::In;
        case SpatialRelation::In: return SpatialRelation::Contain;
        case SpatialRelation::Holding: return SpatialRelation::On;
        case SpatialRelation::On: return SpatialRelation::Holding;
        case SpatialRelation::Above: return SpatialRelation::Below;
        case SpatialRelation::Below: return SpatialRelation::Above;
        case SpatialRelation::Near: return SpatialRelation::Near;
    }
    return r;
}

std::set<RelationTriple> derive_relations(const std::vector<SceneObject>& objects,
                                          const RelationRuleConfig& cfg) {
    std::set<RelationTriple> out;
    const std::size_t n = objects.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const SceneObject& a = objects[i];
            const SceneObject& b = objects[j];

            if (b.container && boxes_overlap(a.box, b.box)) {
                out.insert({b.object_id, SpatialRelation::Contain, a.object_id});
                out.insert({a.object_id, SpatialRelation::In, b.object_id});
            }
            if (b.surface && footprints_overlap(a.box, b.box)) {
                double gap = a.box.min().z() - b.box.max().z();
                if (gap >= 0.0 && gap <= cfg.on_epsilon) {
                    out.insert({a.object_id, SpatialRelation::On, b.object_id});
                    out.insert({b.object_id, SpatialRelation::Holding, a.object_id});
                }
            }
            if ((footprints_overlap(a.box, b.box) ||
                 footprint_distance(a.box, b.box) <= cfg.above_xy_band) &&
                a.box.min().z() > b.box.max().z()) {
                out.insert({a.object_id, SpatialRelation::Above, b.object_id});
                out.insert({b.object_id, SpatialRelation::Below, a.object_id});
            }
            if (i < j && box_distance(a.box, b.box) < cfg.near_threshold) {
                out.insert({a.object_id, SpatialRelation::Near, b.object_id});
                out.insert({b.object_id, SpatialRelation::Near, a.object_id});
            }
        }
    }
    return out;
}

std::string scene_graph_to_json(const SceneGraph& graph, const CategoryTable& categories) {
    json j;
    j["objects"] = json::array();
    for (const auto& o : graph.objects) {
        json oj;
        oj["id"] = o.object_id;
        oj["category"] = categories.name(o.category);
        oj["box_min"] = {o.box.min().x(), o.box.min().y(), o.box.min().z()};
        oj["box_max"] = {o.box.max().x(), o.box.max().y(), o.box.max().z()};
        oj["confidence"] = o.mean_confidence;
        j["objects"].push_back(std::move(oj));
    }
    j["relations"] = json::array();
    for (const auto& [s, r, o] : graph.relations) {
        j["relations"].push_back({s, to_string(r), o});
    }
    return j.dump(2);
}

SceneGraph scene_graph_from_json(const std::string& text, const CategoryTable& categories) {
    json j = json::parse(text);
    SceneGraph g;
    for (const auto& oj : j.at("objects")) {
        SceneObject o;
        o.object_id = oj.at("id").get<std::int32_t>();
        auto cat = categories.find(oj.at("category").get<std::string>());
        if (!cat) throw std::runtime_error("unknown category in scene graph: " +
                                           oj.at("category").get<std::string>());
        o.category = *cat;
        const auto& info = categories.info(*cat);
        o.container = info.container;
        o.surface = info.surface;
        auto mn = oj.at("box_min").get<std::vector<double>>();
        auto mx = oj.at("box_max").get<std::vector<double>>();
        o.box = Box3(Vec3(mn[0], mn[1], mn[2]), Vec3(mx[0], mx[1], mx[2]));
        o.mean_confidence = oj.value("confidence", 1.0);
        g.objects.push_back(std::move(o));
    }
    for (const auto& rj : j.at("relations")) {
        auto rel = relation_from_string(rj.at(1).get<std::string>());
        if (!rel) throw std::runtime_error("unknown relation in scene graph dump");
        g.relations.insert({rj.at(0).get<std::int32_t>(), *rel, rj.at(2).get<std::int32_t>()});
    }
    return g;
}

}  // namespace keqa
