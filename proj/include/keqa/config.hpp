#pragma once

#include <string>

namespace keqa {

struct CameraConfig {
    int width = 80;
    int height = 80;
    double hfov_deg = 90.0;
    double eye_height = 1.40;        // meters above the floor
    double tilt_limit_deg = 30.0;    // |phi| bound
};

struct ActionConfig {
    double step = 0.25;              // MoveAhead distance, meters
    double rotate_deg = 45.0;
    double tilt_deg = 30.0;
    double agent_radius = 0.16;      // collision footprint
    double agent_height = 1.60;
};

struct NoiseConfig {
    double dropout_prob = 0.0;       // per-instance detection miss, per render
    double confusion_prob = 0.0;     // per-pixel category swap
    double confidence_min = 1.0;     // labeled-pixel confidence range
    double confidence_max = 1.0;
    bool enabled() const { return dropout_prob > 0.0 || confusion_prob > 0.0 || confidence_min < 1.0; }
};

struct ReconConfig {
    double link_distance = 0.1732;   // ~2 voxel diagonals at 0.05 m
    int min_voxels = 4;
    double on_epsilon = 0.05;
    double near_threshold = 0.25;    // Near rule distance
    double above_xy_band = 0.25;     // Above/Below XY proximity
};

struct KbConfig {
    int closure_hops = 3;
};

struct QuestionConfig {
    double kb_clause_prob = 0.5;
    double scene_clause_prob = 0.35;
    double grounded_anchor_prob = 0.6;  // scene clause drawn from GT relations vs random
    int pool_per_type_per_scene = 300;
    int max_count_answer = 4;
    int max_enum_categories = 4;
};

struct PlannerConfig {
    int rollouts = 200;
    double exploration_const = 1.0;
    double viewport_stride = 0.5;
    double stop_threshold = 0.02;    // fraction of relevant voxels still coverable
    int agents = 1;
    int replan_interval = 5;         // steps between anchor-driven region refreshes
    int step_budget = 1000;
    int mcts_max_children = 16;
    bool full_scan = false;
    int prior_min_count = 1;
};

struct WorkbenchConfig {
    double voxel_resolution = 0.05;
    CameraConfig camera;
    ActionConfig actions;
    NoiseConfig noise;
    ReconConfig recon;
    KbConfig kb;
    QuestionConfig questions;
    PlannerConfig planner;
};

// Parses a JSON config file; fields not present keep their defaults.
WorkbenchConfig load_config(const std::string& path);
void merge_config_json(WorkbenchConfig& cfg, const std::string& json_text);
std::string config_to_json(const WorkbenchConfig& cfg);

}  // namespace keqa
