#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "keqa/common.hpp"

namespace keqa {

enum class RoomType { Bedroom, LivingRoom, Kitchen, Bathroom };

const char* to_string(RoomType r);
std::optional<RoomType> room_type_from_string(const std::string& s);
constexpr std::array<RoomType, 4> kAllRoomTypes = {RoomType::Bedroom, RoomType::LivingRoom,
                                                   RoomType::Kitchen, RoomType::Bathroom};

using CategoryIdx = std::int32_t;

struct CategoryInfo {
    CategoryIdx id = -1;
    std::string name;           // canonical lowercase, e.g. "salt shaker"
    std::string singular;       // filter surface forms
    std::string plural;
    std::string enum_singular;  // enumeration unit, e.g. "loaf of bread"
    std::string enum_plural;
    bool pickupable = false;
    bool container = false;
    bool surface = false;
    Vec3 size_min = Vec3::Zero();
    Vec3 size_max = Vec3::Zero();
    int max_count = 4;
    double presence_prob = 0.5;
    std::vector<RoomType> rooms;

    bool in_room(RoomType r) const {
        for (auto rr : rooms)
            if (rr == r) return true;
        return false;
    }
};

class CategoryTable {
public:
    static CategoryTable load(const std::string& json_path);

    const std::vector<CategoryInfo>& all() const { return categories_; }
    const CategoryInfo& info(CategoryIdx id) const { return categories_.at(id); }
    const std::string& name(CategoryIdx id) const { return categories_.at(id).name; }
    std::size_t size() const { return categories_.size(); }

    std::optional<CategoryIdx> find(const std::string& name) const;
    // Matches singular or plural surface forms (normalized).
    std::optional<CategoryIdx> from_surface(const std::string& phrase) const;

    std::vector<CategoryIdx> pickupable_in_room(RoomType r) const;
    std::vector<CategoryIdx> pickupable() const;

private:
    std::vector<CategoryInfo> categories_;
};

}  // namespace keqa
