#include "keqa/categories.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "keqa/kb.hpp"

namespace keqa {

using nlohmann::json;

const char* to_string(RoomType r) {
    switch (r) {
        case RoomType::Bedroom: return "Bedroom";
        case RoomType::LivingRoom: return "LivingRoom";
        case RoomType::Kitchen: return "Kitchen";
        case RoomType::Bathroom: return "Bathroom";
    }
    return "?";
}

std::optional<RoomType> room_type_from_string(const std::string& s) {
    for (auto r : kAllRoomTypes)
        if (s == to_string(r)) return r;
    return std::nullopt;
}

CategoryTable CategoryTable::load(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("cannot open category table: " + json_path);
    json j = json::parse(in);

    CategoryTable table;
    for (const auto& cj : j.at("categories")) {
        CategoryInfo c;
        c.id = static_cast<CategoryIdx>(table.categories_.size());
        c.name = cj.at("name").get<std::string>();
        c.singular = cj.value("singular", c.name);
        c.plural = cj.value("plural", c.singular + "s");
        c.enum_singular = cj.value("enum_singular", c.singular);
        c.enum_plural = cj.value("enum_plural", c.plural);
        c.pickupable = cj.value("pickupable", false);
        c.container = cj.value("container", false);
        c.surface = cj.value("surface", false);
        if (cj.contains("size_min")) {
            auto v = cj.at("size_min").get<std::vector<double>>();
            c.size_min = Vec3(v.at(0), v.at(1), v.at(2));
        }
        if (cj.contains("size_max")) {
            auto v = cj.at("size_max").get<std::vector<double>>();
            c.size_max = Vec3(v.at(0), v.at(1), v.at(2));
        }
        c.max_count = cj.value("max_count", 4);
        c.presence_prob = cj.value("presence_prob", 0.5);
        if (cj.contains("rooms")) {
            for (const auto& rs : cj.at("rooms")) {
                auto r = room_type_from_string(rs.get<std::string>());
                if (!r) throw std::runtime_error("unknown room type in category table: " +
                                                 rs.get<std::string>());
                c.rooms.push_back(*r);
            }
        }
        table.categories_.push_back(std::move(c));
    }
    return table;
}

std::optional<CategoryIdx> CategoryTable::find(const std::string& name) const {
    std::string norm = kb::normalize_phrase(name);
    for (const auto& c : categories_)
        if (kb::normalize_phrase(c.name) == norm) return c.id;
    return std::nullopt;
}

std::optional<CategoryIdx> CategoryTable::from_surface(const std::string& phrase) const {
    std::string norm = kb::normalize_phrase(phrase);
    std::string raw = to_lower(trim(phrase));
    for (const auto& c : categories_) {
        if (kb::normalize_phrase(c.singular) == norm || to_lower(c.plural) == raw ||
            kb::normalize_phrase(c.name) == norm)
            return c.id;
    }
    return std::nullopt;
}

std::vector<CategoryIdx> CategoryTable::pickupable_in_room(RoomType r) const {
    std::vector<CategoryIdx> out;
    for (const auto& c : categories_)
        if (c.pickupable && c.in_room(r)) out.push_back(c.id);
    return out;
}

std::vector<CategoryIdx> CategoryTable::pickupable() const {
    std::vector<CategoryIdx> out;
    for (const auto& c : categories_)
        if (c.pickupable) out.push_back(c.id);
    return out;
}

}  // namespace keqa
