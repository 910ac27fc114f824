#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "keqa/categories.hpp"
#include "keqa/common.hpp"
#include "keqa/config.hpp"
#include "keqa/scene_graph.hpp"

namespace keqa::scene {

// Agent camera pose: position on the floor plane, azimuth, inclination.
struct Viewport {
    double x = 0, y = 0;
    double theta = 0;  // radians, 0 = +x
    double phi = 0;    // radians, 0 = level, positive = up

    Vec3 eye(double eye_height) const { return Vec3(x, y, eye_height); }
    bool operator==(const Viewport& o) const = default;
};

struct CameraBasis {
    Vec3 eye, fwd, right, up;
    double tan_h, tan_v;
};

CameraBasis camera_basis(const Viewport& v, const CameraConfig& cam);

// Direction through pixel (col, row); (0,0) is top-left.
Vec3 pixel_ray(const CameraBasis& basis, int col, int row, int width, int height);

bool in_frustum(const CameraBasis& basis, const Vec3& point);

enum class ActionType : std::uint8_t { MoveAhead, RotateLeft, RotateRight, LookUp, LookDown, Stop };

const char* to_string(ActionType a);

struct PlacementSlot {
    enum class Kind { OnTop, Inside, FloorNear };
    Kind kind = Kind::OnTop;
    int furniture = 0;                     // index into layout furniture
    std::vector<CategoryIdx> categories;   // admissible pickupables
    int capacity = 2;
};

struct FurnitureSpec {
    CategoryIdx category = -1;
    Box3 box;
};

struct SceneLayout {
    std::string layout_id;
    RoomType room_type = RoomType::Bedroom;
    Vec3 extent = Vec3(4, 4, 2.5);         // room is [0, extent]
    std::vector<FurnitureSpec> furniture;  // grounded at z=0
    std::vector<PlacementSlot> slots;
    Viewport spawn;
};

struct ObjectInstance {
    std::int32_t instance_id = -1;
    CategoryIdx category = -1;
    Box3 box;
    bool pickupable = false;
    bool container = false;
    bool surface = false;
    bool fixed = false;      // furniture
    int inside_of = -1;      // containing instance id, or -1
};

// Solid-cell voxelization of a scene at one resolution. Containers are
// voxelized as open-top shells so contents stay visible from above.
struct VoxelWorld {
    GridSpec spec;
    std::vector<std::uint8_t> occupied;
    std::vector<std::int32_t> owner;  // instance id, -1 for free

    bool is_occupied(std::size_t idx) const { return occupied[idx] != 0; }

    struct Hit {
        bool hit = false;
        std::size_t cell = 0;
        double t_entry = 0, t_exit = 0;  // chord of the hit cell along the ray
        double t_bound = 0;              // where the ray leaves the grid (no hit)
    };
    Hit raycast(const Vec3& origin, const Vec3& dir) const;

    // True when no occupied cell lies strictly between origin's cell and the
    // target cell along the segment (the target itself may be occupied).
    bool segment_clear(const Vec3& origin, const Vec3& target_center, std::size_t target_idx) const;
};

struct Scene {
    std::string scene_id;
    SceneLayout layout;
    std::uint64_t seed = 0;
    std::vector<ObjectInstance> objects;  // furniture first, then pickupables
    std::vector<std::string> generation_log;

    const ObjectInstance* instance(std::int32_t id) const {
        for (const auto& o : objects)
            if (o.instance_id == id) return &o;
        return nullptr;
    }

    // Lazily built per resolution; build is not thread-safe, reads are.
    const VoxelWorld& world(double resolution) const;

private:
    mutable std::map<std::int64_t, std::shared_ptr<const VoxelWorld>> world_cache_;
};

struct Observation {
    int width = 0, height = 0;
    std::vector<std::int16_t> category;   // -1 = unlabeled (structure or dropped)
    std::vector<std::int32_t> instance;   // -1 = none
    std::vector<float> depth;             // meters along the pixel ray
    std::vector<float> confidence;        // present wherever category >= 0
    Viewport viewport;
    int step_index = 0;

    std::size_t at(int col, int row) const { return static_cast<std::size_t>(row) * width + col; }
};

Scene generate_scene(const SceneLayout& layout, std::uint64_t seed, const CategoryTable& categories,
                     const WorkbenchConfig& cfg);

Observation render_observation(const Scene& scene, const Viewport& viewport,
                               const NoiseConfig& noise, const CategoryTable& categories,
                               const WorkbenchConfig& cfg, RngStream& rng, int step_index = 0);

// Voxels whose center lies in the view frustum with an unoccluded segment to
// the camera; surface voxels included, interior voxels occluded by their shell.
std::vector<std::size_t> visible_voxels(const VoxelWorld& world, const Viewport& viewport,
                                        const CameraConfig& cam);

struct StepOutcome {
    Viewport pose;
    bool blocked = false;
    bool stopped = false;
};

// Discrete kinematics; collisions clamp movement, Stop leaves the pose alone.
StepOutcome apply_action(const Scene& scene, const Viewport& pose, ActionType action,
                         const WorkbenchConfig& cfg);

// apply_action + render at the new pose.
std::pair<StepOutcome, Observation> step(const Scene& scene, const Viewport& pose,
                                         ActionType action, const NoiseConfig& noise,
                                         const CategoryTable& categories,
                                         const WorkbenchConfig& cfg, RngStream& rng,
                                         int step_index = 0);

// Position collision test shared with the planner's nav grid.
bool position_free(const Scene& scene, double x, double y, const ActionConfig& act);

SceneGraph ground_truth_scene_graph(const Scene& scene, const CategoryTable& categories,
                                    const RelationRuleConfig& rules);

// ---- layout library + scene files ----

std::vector<SceneLayout> load_layout_library(const std::string& json_path,
                                             const CategoryTable& categories);

std::string scene_to_json(const Scene& scene, const CategoryTable& categories);
Scene scene_from_json(const std::string& text, const CategoryTable& categories);
void save_scene(const Scene& scene, const CategoryTable& categories, const std::string& path);
Scene load_scene(const std::string& path, const CategoryTable& categories);

}  // namespace keqa::scene
