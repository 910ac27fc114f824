#include "keqa/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace keqa {

using nlohmann::json;

namespace {

template <typename T>
void get_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void merge_config_json(WorkbenchConfig& cfg, const std::string& json_text) {
    json j = json::parse(json_text);
    get_if(j, "voxel_resolution", cfg.voxel_resolution);
    if (j.contains("camera")) {
        const auto& c = j.at("camera");
        get_if(c, "width", cfg.camera.width);
        get_if(c, "height", cfg.camera.height);
        get_if(c, "hfov_deg", cfg.camera.hfov_deg);
        get_if(c, "eye_height", cfg.camera.eye_height);
        get_if(c, "tilt_limit_deg", cfg.camera.tilt_limit_deg);
    }
    if (j.contains("actions")) {
        const auto& a = j.at("actions");
        get_if(a, "step", cfg.actions.step);
        get_if(a, "rotate_deg", cfg.actions.rotate_deg);
        get_if(a, "tilt_deg", cfg.actions.tilt_deg);
        get_if(a, "agent_radius", cfg.actions.agent_radius);
        get_if(a, "agent_height", cfg.actions.agent_height);
    }
    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        get_if(n, "dropout_prob", cfg.noise.dropout_prob);
        get_if(n, "confusion_prob", cfg.noise.confusion_prob);
        get_if(n, "confidence_min", cfg.noise.confidence_min);
        get_if(n, "confidence_max", cfg.noise.confidence_max);
    }
    if (j.contains("recon")) {
        const auto& r = j.at("recon");
        get_if(r, "link_distance", cfg.recon.link_distance);
        get_if(r, "min_voxels", cfg.recon.min_voxels);
        get_if(r, "on_epsilon", cfg.recon.on_epsilon);
        get_if(r, "near_threshold", cfg.recon.near_threshold);
        get_if(r, "above_xy_band", cfg.recon.above_xy_band);
    }
    if (j.contains("kb")) {
        get_if(j.at("kb"), "closure_hops", cfg.kb.closure_hops);
    }
    if (j.contains("questions")) {
        const auto& q = j.at("questions");
        get_if(q, "kb_clause_prob", cfg.questions.kb_clause_prob);
        get_if(q, "scene_clause_prob", cfg.questions.scene_clause_prob);
        get_if(q, "grounded_anchor_prob", cfg.questions.grounded_anchor_prob);
        get_if(q, "pool_per_type_per_scene", cfg.questions.pool_per_type_per_scene);
        get_if(q, "max_count_answer", cfg.questions.max_count_answer);
        get_if(q, "max_enum_categories", cfg.questions.max_enum_categories);
    }
    if (j.contains("planner")) {
        const auto& p = j.at("planner");
        get_if(p, "rollouts", cfg.planner.rollouts);
        get_if(p, "exploration_const", cfg.planner.exploration_const);
        get_if(p, "viewport_stride", cfg.planner.viewport_stride);
        get_if(p, "stop_threshold", cfg.planner.stop_threshold);
        get_if(p, "agents", cfg.planner.agents);
        get_if(p, "replan_interval", cfg.planner.replan_interval);
        get_if(p, "step_budget", cfg.planner.step_budget);
        get_if(p, "mcts_max_children", cfg.planner.mcts_max_children);
        get_if(p, "full_scan", cfg.planner.full_scan);
        get_if(p, "prior_min_count", cfg.planner.prior_min_count);
    }
}

WorkbenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    WorkbenchConfig cfg;
    merge_config_json(cfg, ss.str());
    return cfg;
}

std::string config_to_json(const WorkbenchConfig& cfg) {
    json j;
    j["voxel_resolution"] = cfg.voxel_resolution;
    j["camera"] = {{"width", cfg.camera.width},
                   {"height", cfg.camera.height},
                   {"hfov_deg", cfg.camera.hfov_deg},
                   {"eye_height", cfg.camera.eye_height},
                   {"tilt_limit_deg", cfg.camera.tilt_limit_deg}};
    j["actions"] = {{"step", cfg.actions.step},
                    {"rotate_deg", cfg.actions.rotate_deg},
                    {"tilt_deg", cfg.actions.tilt_deg},
                    {"agent_radius", cfg.actions.agent_radius},
                    {"agent_height", cfg.actions.agent_height}};
    j["noise"] = {{"dropout_prob", cfg.noise.dropout_prob},
                  {"confusion_prob", cfg.noise.confusion_prob},
                  {"confidence_min", cfg.noise.confidence_min},
                  {"confidence_max", cfg.noise.confidence_max}};
    j["recon"] = {{"link_distance", cfg.recon.link_distance},
                  {"min_voxels", cfg.recon.min_voxels},
                  {"on_epsilon", cfg.recon.on_epsilon},
                  {"near_threshold", cfg.recon.near_threshold},
                  {"above_xy_band", cfg.recon.above_xy_band}};
    j["kb"] = {{"closure_hops", cfg.kb.closure_hops}};
    j["questions"] = {{"kb_clause_prob", cfg.questions.kb_clause_prob},
                      {"scene_clause_prob", cfg.questions.scene_clause_prob},
                      {"grounded_anchor_prob", cfg.questions.grounded_anchor_prob},
                      {"pool_per_type_per_scene", cfg.questions.pool_per_type_per_scene},
                      {"max_count_answer", cfg.questions.max_count_answer},
                      {"max_enum_categories", cfg.questions.max_enum_categories}};
    j["planner"] = {{"rollouts", cfg.planner.rollouts},
                    {"exploration_const", cfg.planner.exploration_const},
                    {"viewport_stride", cfg.planner.viewport_stride},
                    {"stop_threshold", cfg.planner.stop_threshold},
                    {"agents", cfg.planner.agents},
                    {"replan_interval", cfg.planner.replan_interval},
                    {"step_budget", cfg.planner.step_budget},
                    {"mcts_max_children", cfg.planner.mcts_max_children},
                    {"full_scan", cfg.planner.full_scan},
                    {"prior_min_count", cfg.planner.prior_min_count}};
    return j.dump(2);
}

}  // namespace keqa
