#include "keqa/scene.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace keqa::scene {

using nlohmann::json;

const char* to_string(ActionType a) {
    switch (a) {
        case ActionType::MoveAhead: return "MoveAhead";
        case ActionType::RotateLeft: return "RotateLeft";
        case ActionType::RotateRight: return "RotateRight";
        case ActionType::LookUp: return "LookUp";
        case ActionType::LookDown: return "LookDown";
        case ActionType::Stop: return "Stop";
    }
    return "?";
}

CameraBasis camera_basis(const Viewport& v, const CameraConfig& cam) {
    CameraBasis b;
    b.eye = v.eye(cam.eye_height);
    b.fwd = Vec3(std::cos(v.theta) * std::cos(v.phi), std::sin(v.theta) * std::cos(v.phi),
                 std::sin(v.phi));
    b.right = Vec3(std::sin(v.theta), -std::cos(v.theta), 0.0);
    b.up = b.right.cross(b.fwd);
    b.tan_h = std::tan(cam.hfov_deg * M_PI / 360.0);
    b.tan_v = b.tan_h * static_cast<double>(cam.height) / cam.width;
    return b;
}

Vec3 pixel_ray(const CameraBasis& b, int col, int row, int width, int height) {
    double tx = (2.0 * (col + 0.5) / width - 1.0) * b.tan_h;
    double ty = (1.0 - 2.0 * (row + 0.5) / height) * b.tan_v;
    return (b.fwd + b.right * tx + b.up * ty).normalized();
}

bool in_frustum(const CameraBasis& b, const Vec3& p) {
    Vec3 d = p - b.eye;
    double tf = d.dot(b.fwd);
    if (tf <= 1e-12) return false;
    return std::abs(d.dot(b.right)) <= tf * b.tan_h && std::abs(d.dot(b.up)) <= tf * b.tan_v;
}

namespace {

// Amanatides-Woo grid traversal. visit(cell_index, t_entry, t_exit) returns
// false to stop. Traversal ends when the ray leaves the grid or passes t_limit.
template <typename F>
void walk_cells(const GridSpec& spec, const Vec3& origin, const Vec3& dir, double t_limit,
                F&& visit) {
    Vec3i cell = spec.coord_of(origin);
    if (!spec.in_bounds(cell)) return;

    std::array<int, 3> stepv{};
    Vec3 t_max, t_delta;
    for (int k = 0; k < 3; ++k) {
        if (dir[k] > 1e-15) {
            stepv[k] = 1;
            t_max[k] = ((cell[k] + 1) * spec.resolution - origin[k]) / dir[k];
            t_delta[k] = spec.resolution / dir[k];
        } else if (dir[k] < -1e-15) {
            stepv[k] = -1;
            t_max[k] = (cell[k] * spec.resolution - origin[k]) / dir[k];
            t_delta[k] = -spec.resolution / dir[k];
        } else {
            stepv[k] = 0;
            t_max[k] = std::numeric_limits<double>::infinity();
            t_delta[k] = std::numeric_limits<double>::infinity();
        }
    }

    double t_entry = 0.0;
    while (true) {
        int axis = 0;
        if (t_max[1] < t_max[axis]) axis = 1;
        if (t_max[2] < t_max[axis]) axis = 2;
        double t_exit = std::min(t_max[axis], t_limit);
        if (!visit(spec.index_of(cell), t_entry, t_exit)) return;
        if (t_max[axis] >= t_limit) return;
        t_entry = t_max[axis];
        cell[axis] += stepv[axis];
        t_max[axis] += t_delta[axis];
        if (cell[axis] < 0 || cell[axis] >= spec.dims[axis]) return;
    }
}

}  // namespace

VoxelWorld::Hit VoxelWorld::raycast(const Vec3& origin, const Vec3& dir) const {
    Hit h;
    const std::size_t origin_idx =
        spec.in_bounds(spec.coord_of(origin)) ? spec.index_of(spec.coord_of(origin)) : SIZE_MAX;
    double t_end = 0;
    walk_cells(spec, origin, dir, std::numeric_limits<double>::infinity(),
               [&](std::size_t idx, double t0, double t1) {
                   t_end = t1;
                   if (idx != origin_idx && occupied[idx]) {
                       h.hit = true;
                       h.cell = idx;
                       h.t_entry = t0;
                       h.t_exit = t1;
                       return false;
                   }
                   return true;
               });
    h.t_bound = t_end;
    return h;
}

bool VoxelWorld::segment_clear(const Vec3& origin, const Vec3& target_center,
                               std::size_t target_idx) const {
    Vec3 d = target_center - origin;
    double len = d.norm();
    if (len < 1e-12) return true;
    Vec3 dir = d / len;
    const std::size_t origin_idx =
        spec.in_bounds(spec.coord_of(origin)) ? spec.index_of(spec.coord_of(origin)) : SIZE_MAX;
    bool clear = true;
    walk_cells(spec, origin, dir, len, [&](std::size_t idx, double, double) {
        if (idx == target_idx) return false;  // reached the target cell
        if (idx != origin_idx && occupied[idx]) {
            clear = false;
            return false;
        }
        return true;
    });
    return clear;
}

namespace {

struct CellRange {
    Vec3i lo, hi;  // inclusive
    bool empty = false;
};

CellRange cells_overlapping(const GridSpec& spec, const Box3& box) {
    CellRange r;
    for (int k = 0; k < 3; ++k) {
        r.lo[k] = std::max(0, static_cast<int>(std::floor(box.min()[k] / spec.resolution + 1e-9)));
        r.hi[k] = std::min(spec.dims[k] - 1,
                           static_cast<int>(std::ceil(box.max()[k] / spec.resolution - 1e-9)) - 1);
        if (r.hi[k] < r.lo[k]) r.empty = true;
    }
    return r;
}

std::shared_ptr<const VoxelWorld> build_world(const Scene& scene, double resolution) {
    auto world = std::make_shared<VoxelWorld>();
    world->spec = GridSpec(resolution, scene.layout.extent);
    world->occupied.assign(world->spec.cell_count(), 0);
    world->owner.assign(world->spec.cell_count(), -1);

    for (const auto& obj : scene.objects) {
        CellRange r = cells_overlapping(world->spec, obj.box);
        if (r.empty) continue;
        bool shell = obj.container && (r.hi.x() - r.lo.x() >= 2) && (r.hi.y() - r.lo.y() >= 2) &&
                     (r.hi.z() - r.lo.z() >= 1);
        for (int z = r.lo.z(); z <= r.hi.z(); ++z) {
            for (int y = r.lo.y(); y <= r.hi.y(); ++y) {
                for (int x = r.lo.x(); x <= r.hi.x(); ++x) {
                    if (shell) {
                        bool interior = x > r.lo.x() && x < r.hi.x() && y > r.lo.y() &&
                                        y < r.hi.y() && z > r.lo.z();  // top stays open
                        if (interior) continue;
                    }
                    std::size_t idx = world->spec.index_of(Vec3i(x, y, z));
                    world->occupied[idx] = 1;
                    world->owner[idx] = obj.instance_id;
                }
            }
        }
    }
    return world;
}

}  // namespace

const VoxelWorld& Scene::world(double resolution) const {
    std::int64_t key = static_cast<std::int64_t>(std::llround(resolution * 1e6));
    auto it = world_cache_.find(key);
    if (it == world_cache_.end()) {
        it = world_cache_.emplace(key, build_world(*this, resolution)).first;
    }
    return *it->second;
}

Scene generate_scene(const SceneLayout& layout, std::uint64_t seed, const CategoryTable& categories,
                     const WorkbenchConfig& cfg) {
    Scene scene;
    scene.layout = layout;
    scene.seed = seed;
    scene.scene_id = layout.layout_id + "_s" + std::to_string(seed);

    for (std::size_t i = 0; i < layout.furniture.size(); ++i) {
        const auto& f = layout.furniture[i];
        const auto& info = categories.info(f.category);
        ObjectInstance obj;
        obj.instance_id = static_cast<std::int32_t>(scene.objects.size());
        obj.category = f.category;
        obj.box = f.box;
        obj.pickupable = false;
        obj.container = info.container;
        obj.surface = info.surface;
        obj.fixed = true;
        scene.objects.push_back(obj);
    }

    RngStream rng(splitmix64(seed ^ fnv1a(layout.layout_id)));
    std::vector<int> per_category_count(categories.size(), 0);

    auto collides = [&](const Box3& box, int exempt_instance) {
        if (box.min().x() < 0 || box.min().y() < 0 || box.min().z() < -1e-9 ||
            box.max().x() > layout.extent.x() || box.max().y() > layout.extent.y() ||
            box.max().z() > layout.extent.z())
            return true;
        for (const auto& other : scene.objects) {
            if (other.instance_id == exempt_instance) continue;
            if (boxes_overlap(box, other.box)) return true;
        }
        return false;
    };

    auto snap = [](double v, double q) { return std::max(q, std::round(v / q) * q); };

    for (std::size_t slot_idx = 0; slot_idx < layout.slots.size(); ++slot_idx) {
        const auto& slot = layout.slots[slot_idx];
        if (slot.furniture < 0 || slot.furniture >= static_cast<int>(layout.furniture.size()))
            throw std::runtime_error("slot references missing furniture in layout " +
                                     layout.layout_id);
        const ObjectInstance& anchor = scene.objects[slot.furniture];
        int placed_in_slot = 0;

        for (CategoryIdx cat : slot.categories) {
            if (placed_in_slot >= slot.capacity) break;
            const auto& info = categories.info(cat);
            if (!rng.bernoulli(info.presence_prob)) continue;
            int room_left = std::min(slot.capacity - placed_in_slot,
                                     info.max_count - per_category_count[cat]);
            if (room_left <= 0) continue;
            int want = static_cast<int>(rng.uniform_int(1, room_left));

            for (int n = 0; n < want; ++n) {
                Vec3 size;
                for (int k = 0; k < 3; ++k)
                    size[k] = rng.uniform(info.size_min[k], info.size_max[k]);
                size.x() = snap(size.x(), 0.01);
                size.y() = snap(size.y(), 0.01);
                size.z() = snap(size.z(), 0.05);  // keeps rest heights grid-exact

                bool placed = false;
                for (int attempt = 0; attempt < 10 && !placed; ++attempt) {
                    Box3 box;
                    int inside_of = -1;
                    if (slot.kind == PlacementSlot::Kind::OnTop) {
                        double x0 = anchor.box.min().x() + 0.01, x1 = anchor.box.max().x() - size.x() - 0.01;
                        double y0 = anchor.box.min().y() + 0.01, y1 = anchor.box.max().y() - size.y() - 0.01;
                        if (x1 < x0 || y1 < y0) break;
                        Vec3 mn(rng.uniform(x0, x1), rng.uniform(y0, y1), anchor.box.max().z());
                        box = Box3(mn, mn + size);
                    } else if (slot.kind == PlacementSlot::Kind::Inside) {
                        const double wall = 0.06;
                        double x0 = anchor.box.min().x() + wall, x1 = anchor.box.max().x() - size.x() - wall;
                        double y0 = anchor.box.min().y() + wall, y1 = anchor.box.max().y() - size.y() - wall;
                        if (x1 < x0 || y1 < y0) break;
                        Vec3 mn(rng.uniform(x0, x1), rng.uniform(y0, y1), anchor.box.min().z() + 0.05);
                        box = Box3(mn, mn + size);
                        inside_of = anchor.instance_id;
                    } else {  // FloorNear
                        int side = static_cast<int>(rng.uniform_int(0, 3));
                        double gap = rng.uniform(0.02, 0.18);
                        double x, y;
                        if (side == 0) {  // +x side
                            x = anchor.box.max().x() + gap;
                            y = rng.uniform(anchor.box.min().y() - size.y(), anchor.box.max().y());
                        } else if (side == 1) {  // -x side
                            x = anchor.box.min().x() - gap - size.x();
                            y = rng.uniform(anchor.box.min().y() - size.y(), anchor.box.max().y());
                        } else if (side == 2) {  // +y side
                            y = anchor.box.max().y() + gap;
                            x = rng.uniform(anchor.box.min().x() - size.x(), anchor.box.max().x());
                        } else {
                            y = anchor.box.min().y() - gap - size.y();
                            x = rng.uniform(anchor.box.min().x() - size.x(), anchor.box.max().x());
                        }
                        box = Box3(Vec3(x, y, 0.0), Vec3(x, y, 0.0) + size);
                    }

                    bool bad = collides(box, inside_of);
                    if (!bad && inside_of >= 0) {
                        // Content must still fit inside the anchor footprint.
                        if (!footprint(anchor.box).contains(footprint(box))) bad = true;
                    }
                    if (bad) continue;

                    ObjectInstance obj;
                    obj.instance_id = static_cast<std::int32_t>(scene.objects.size());
                    obj.category = cat;
                    obj.box = box;
                    obj.pickupable = true;
                    obj.container = info.container;
                    obj.surface = info.surface;
                    obj.inside_of = inside_of;
                    scene.objects.push_back(obj);
                    ++per_category_count[cat];
                    ++placed_in_slot;
                    placed = true;
                }
                if (!placed) {
                    scene.generation_log.push_back("slot " + std::to_string(slot_idx) +
                                                   ": placement failed for '" + info.name + "'");
                    break;
                }
                if (placed_in_slot >= slot.capacity) break;
            }
        }
    }
    return scene;
}

Observation render_observation(const Scene& scene, const Viewport& viewport,
                               const NoiseConfig& noise, const CategoryTable& categories,
                               const WorkbenchConfig& cfg, RngStream& rng, int step_index) {
    const VoxelWorld& world = scene.world(cfg.voxel_resolution);
    const CameraConfig& cam = cfg.camera;
    CameraBasis basis = camera_basis(viewport, cam);

    Observation obs;
    obs.width = cam.width;
    obs.height = cam.height;
    obs.viewport = viewport;
    obs.step_index = step_index;
    const std::size_t n = static_cast<std::size_t>(cam.width) * cam.height;
    obs.category.assign(n, -1);
    obs.instance.assign(n, -1);
    obs.depth.assign(n, 0.0f);
    obs.confidence.assign(n, 0.0f);

    // Per-render instance dropout; drawn for every instance so the rng stream
    // does not depend on what happens to be visible.
    std::vector<char> dropped(scene.objects.size(), 0);
    if (noise.dropout_prob > 0.0) {
        for (std::size_t i = 0; i < scene.objects.size(); ++i)
            dropped[i] = rng.bernoulli(noise.dropout_prob) ? 1 : 0;
    }

    const int n_categories = static_cast<int>(categories.size());
    for (int row = 0; row < cam.height; ++row) {
        for (int col = 0; col < cam.width; ++col) {
            std::size_t px = obs.at(col, row);
            Vec3 dir = pixel_ray(basis, col, row, cam.width, cam.height);
            auto hit = world.raycast(basis.eye, dir);
            if (!hit.hit) {
                obs.depth[px] = static_cast<float>(hit.t_bound);
                continue;
            }
            obs.depth[px] = static_cast<float>((hit.t_entry + hit.t_exit) / 2.0);
            std::int32_t inst = world.owner[hit.cell];
            if (inst < 0) continue;
            if (noise.dropout_prob > 0.0 && dropped[inst]) continue;
            std::int16_t cat = static_cast<std::int16_t>(scene.objects[inst].category);
            if (noise.confusion_prob > 0.0 && rng.bernoulli(noise.confusion_prob)) {
                int other = static_cast<int>(rng.uniform_int(0, n_categories - 2));
                if (other >= cat) ++other;
                cat = static_cast<std::int16_t>(other);
            }
            obs.category[px] = cat;
            obs.instance[px] = inst;
            obs.confidence[px] = noise.enabled()
                                     ? static_cast<float>(rng.uniform(noise.confidence_min,
                                                                      noise.confidence_max))
                                     : 1.0f;
        }
    }
    return obs;
}

std::vector<std::size_t> visible_voxels(const VoxelWorld& world, const Viewport& viewport,
                                        const CameraConfig& cam) {
    CameraBasis basis = camera_basis(viewport, cam);
    std::vector<std::size_t> out;
    const GridSpec& spec = world.spec;
    const std::size_t n = spec.cell_count();
    for (std::size_t idx = 0; idx < n; ++idx) {
        Vec3 center = spec.center_of(spec.coord_at(idx));
        if (!in_frustum(basis, center)) continue;
        if (world.segment_clear(basis.eye, center, idx)) out.push_back(idx);
    }
    return out;
}

bool position_free(const Scene& scene, double x, double y, const ActionConfig& act) {
    const double r = act.agent_radius;
    if (x < r || y < r || x > scene.layout.extent.x() - r || y > scene.layout.extent.y() - r)
        return false;
    for (const auto& obj : scene.objects) {
        if (obj.box.min().z() >= act.agent_height) continue;
        if (x >= obj.box.min().x() - r && x <= obj.box.max().x() + r &&
            y >= obj.box.min().y() - r && y <= obj.box.max().y() + r)
            return false;
    }
    return true;
}

StepOutcome apply_action(const Scene& scene, const Viewport& pose, ActionType action,
                         const WorkbenchConfig& cfg) {
    StepOutcome out{pose, false, false};
    const double rot = cfg.actions.rotate_deg * M_PI / 180.0;
    const double tilt = cfg.actions.tilt_deg * M_PI / 180.0;
    const double tilt_limit = cfg.camera.tilt_limit_deg * M_PI / 180.0 + 1e-9;

    switch (action) {
        case ActionType::MoveAhead: {
            double nx = pose.x + cfg.actions.step * std::cos(pose.theta);
            double ny = pose.y + cfg.actions.step * std::sin(pose.theta);
            if (position_free(scene, nx, ny, cfg.actions)) {
                out.pose.x = nx;
                out.pose.y = ny;
            } else {
                out.blocked = true;
            }
            break;
        }
        case ActionType::RotateLeft:
            out.pose.theta += rot;
            if (out.pose.theta >= 2 * M_PI) out.pose.theta -= 2 * M_PI;
            break;
        case ActionType::RotateRight:
            out.pose.theta -= rot;
            if (out.pose.theta < 0) out.pose.theta += 2 * M_PI;
            break;
        case ActionType::LookUp:
            if (pose.phi + tilt > tilt_limit) {
                out.blocked = true;
            } else {
                out.pose.phi += tilt;
            }
            break;
        case ActionType::LookDown:
            if (pose.phi - tilt < -tilt_limit) {
                out.blocked = true;
            } else {
                out.pose.phi -= tilt;
            }
            break;
        case ActionType::Stop:
            out.stopped = true;
            break;
    }
    return out;
}

std::pair<StepOutcome, Observation> step(const Scene& scene, const Viewport& pose,
                                         ActionType action, const NoiseConfig& noise,
                                         const CategoryTable& categories,
                                         const WorkbenchConfig& cfg, RngStream& rng,
                                         int step_index) {
    StepOutcome outcome = apply_action(scene, pose, action, cfg);
    Observation obs =
        render_observation(scene, outcome.pose, noise, categories, cfg, rng, step_index);
    return {outcome, obs};
}

SceneGraph ground_truth_scene_graph(const Scene& scene, const CategoryTable& categories,
                                    const RelationRuleConfig& rules) {
    SceneGraph g;
    for (const auto& obj : scene.objects) {
        SceneObject so;
        so.object_id = obj.instance_id;
        so.category = obj.category;
        so.box = obj.box;
        so.container = obj.container;
        so.surface = obj.surface;
        so.mean_confidence = 1.0;
        g.objects.push_back(std::move(so));
    }
    g.relations = derive_relations(g.objects, rules);
    return g;
}

// ---- files ----

std::vector<SceneLayout> load_layout_library(const std::string& json_path,
                                             const CategoryTable& categories) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("cannot open layout library: " + json_path);
    json j = json::parse(in);
    std::vector<SceneLayout> out;
    for (const auto& lj : j.at("layouts")) {
        SceneLayout l;
        l.layout_id = lj.at("id").get<std::string>();
        auto rt = room_type_from_string(lj.at("room_type").get<std::string>());
        if (!rt) throw std::runtime_error("bad room_type in layout " + l.layout_id);
        l.room_type = *rt;
        auto e = lj.at("extent").get<std::vector<double>>();
        l.extent = Vec3(e.at(0), e.at(1), e.at(2));
        for (const auto& fj : lj.at("furniture")) {
            FurnitureSpec f;
            auto cat = categories.find(fj.at("category").get<std::string>());
            if (!cat) throw std::runtime_error("unknown furniture category in layout " +
                                               l.layout_id);
            f.category = *cat;
            auto pos = fj.at("pos").get<std::vector<double>>();
            auto size = fj.at("size").get<std::vector<double>>();
            Vec3 mn(pos.at(0), pos.at(1), 0.0);
            f.box = Box3(mn, mn + Vec3(size.at(0), size.at(1), size.at(2)));
            l.furniture.push_back(f);
        }
        if (lj.contains("slots")) {
            for (const auto& sj : lj.at("slots")) {
                PlacementSlot s;
                std::string kind = sj.at("kind").get<std::string>();
                if (kind == "on") s.kind = PlacementSlot::Kind::OnTop;
                else if (kind == "in") s.kind = PlacementSlot::Kind::Inside;
                else if (kind == "floor_near") s.kind = PlacementSlot::Kind::FloorNear;
                else throw std::runtime_error("bad slot kind '" + kind + "'");
                s.furniture = sj.at("furniture").get<int>();
                for (const auto& cj : sj.at("categories")) {
                    auto cat = categories.find(cj.get<std::string>());
                    if (!cat) throw std::runtime_error("unknown slot category in layout " +
                                                       l.layout_id);
                    s.categories.push_back(*cat);
                }
                s.capacity = sj.value("capacity", 2);
                l.slots.push_back(std::move(s));
            }
        }
        auto sp = lj.at("spawn").get<std::vector<double>>();
        l.spawn.x = sp.at(0);
        l.spawn.y = sp.at(1);
        l.spawn.theta = sp.size() > 2 ? sp.at(2) * M_PI / 180.0 : 0.0;
        l.spawn.phi = 0.0;
        out.push_back(std::move(l));
    }
    return out;
}

std::string scene_to_json(const Scene& scene, const CategoryTable& categories) {
    json j;
    j["scene_id"] = scene.scene_id;
    j["layout_id"] = scene.layout.layout_id;
    j["room_type"] = to_string(scene.layout.room_type);
    j["extent"] = {scene.layout.extent.x(), scene.layout.extent.y(), scene.layout.extent.z()};
    j["seed"] = scene.seed;
    j["spawn"] = {scene.layout.spawn.x, scene.layout.spawn.y,
                  scene.layout.spawn.theta * 180.0 / M_PI};
    j["objects"] = json::array();
    for (const auto& o : scene.objects) {
        Vec3 c = o.box.center(), s = o.box.sizes();
        json oj;
        oj["id"] = o.instance_id;
        oj["category"] = categories.name(o.category);
        oj["center"] = {c.x(), c.y(), c.z()};
        oj["size"] = {s.x(), s.y(), s.z()};
        oj["pickupable"] = o.pickupable;
        oj["container"] = o.container;
        oj["surface"] = o.surface;
        oj["fixed"] = o.fixed;
        if (o.inside_of >= 0) oj["inside_of"] = o.inside_of;
        j["objects"].push_back(std::move(oj));
    }
    return j.dump(2);
}

Scene scene_from_json(const std::string& text, const CategoryTable& categories) {
    json j = json::parse(text);
    Scene scene;
    scene.scene_id = j.at("scene_id").get<std::string>();
    scene.layout.layout_id = j.at("layout_id").get<std::string>();
    auto rt = room_type_from_string(j.at("room_type").get<std::string>());
    if (!rt) throw std::runtime_error("bad room_type in scene file");
    scene.layout.room_type = *rt;
    auto e = j.at("extent").get<std::vector<double>>();
    scene.layout.extent = Vec3(e.at(0), e.at(1), e.at(2));
    scene.seed = j.value("seed", 0ull);
    auto sp = j.at("spawn").get<std::vector<double>>();
    scene.layout.spawn.x = sp.at(0);
    scene.layout.spawn.y = sp.at(1);
    scene.layout.spawn.theta = sp.size() > 2 ? sp.at(2) * M_PI / 180.0 : 0.0;
    for (const auto& oj : j.at("objects")) {
        ObjectInstance o;
        o.instance_id = oj.at("id").get<std::int32_t>();
        auto cat = categories.find(oj.at("category").get<std::string>());
        if (!cat) throw std::runtime_error("unknown category in scene file: " +
                                           oj.at("category").get<std::string>());
        o.category = *cat;
        auto c = oj.at("center").get<std::vector<double>>();
        auto s = oj.at("size").get<std::vector<double>>();
        o.box = box_from_center(Vec3(c.at(0), c.at(1), c.at(2)), Vec3(s.at(0), s.at(1), s.at(2)));
        o.pickupable = oj.value("pickupable", false);
        o.container = oj.value("container", false);
        o.surface = oj.value("surface", false);
        o.fixed = oj.value("fixed", false);
        o.inside_of = oj.value("inside_of", -1);
        if (o.fixed) {
            FurnitureSpec f;
            f.category = o.category;
            f.box = o.box;
            scene.layout.furniture.push_back(f);
        }
        scene.objects.push_back(std::move(o));
    }
    return scene;
}

void save_scene(const Scene& scene, const CategoryTable& categories, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scene file: " + path);
    out << scene_to_json(scene, categories);
}

Scene load_scene(const std::string& path, const CategoryTable& categories) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scene_from_json(ss.str(), categories);
}

}  // namespace keqa::scene
