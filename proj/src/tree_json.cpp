#include "exokin/tree_json.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace exokin {

namespace {

using nlohmann::json;

json vec_to_json(const Vector3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vector3 vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument("tree json: " + where + " must be a 3-element array");
    }
    return Vector3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json rotation_to_json(const Rotation& r) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        rows.push_back(json::array({r.m(i, 0), r.m(i, 1), r.m(i, 2)}));
    }
    return rows;
}

Rotation rotation_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument("tree json: " + where + " must be a 3x3 array");
    }
    Rotation r;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3) {
            throw std::invalid_argument("tree json: " + where + " must be a 3x3 array");
        }
        for (int k = 0; k < 3; ++k) r.m(i, k) = j[i][k].get<double>();
    }
    if (!r.is_valid()) {
        throw std::invalid_argument("tree json: " + where + " is not a rotation matrix");
    }
    return r;
}

JointSlot slot_from_string(const std::string& s) {
    for (int i = 0; i < kJointsPerLeg; ++i) {
        if (s == to_string(static_cast<JointSlot>(i))) return static_cast<JointSlot>(i);
    }
    throw std::invalid_argument("tree json: unknown joint slot '" + s + "'");
}

json chain_to_json(const std::array<JointSpec, kJointsPerLeg>& chain) {
    json arr = json::array();
    for (const JointSpec& s : chain) {
        arr.push_back({{"slot", to_string(s.id.slot)},
                       {"axis", vec_to_json(s.axis)},
                       {"offset", vec_to_json(s.offset)},
                       {"limits", json::array({s.limits.min_rad, s.limits.max_rad})}});
    }
    return arr;
}

std::array<JointSpec, kJointsPerLeg> chain_from_json(const json& arr, Side side) {
    const std::string where = std::string(to_string(side)) + " chain";
    if (!arr.is_array() || arr.size() != kJointsPerLeg) {
        throw std::invalid_argument("tree json: " + where + " must have 6 joints");
    }
    std::array<JointSpec, kJointsPerLeg> chain;
    for (int i = 0; i < kJointsPerLeg; ++i) {
        const json& j = arr[i];
        JointSpec spec;
        spec.id = JointId{side, slot_from_string(j.at("slot").get<std::string>())};
        spec.axis = vec_from_json(j.at("axis"), where + " axis");
        spec.offset = vec_from_json(j.at("offset"), where + " offset");
        const json& lim = j.at("limits");
        if (!lim.is_array() || lim.size() != 2) {
            throw std::invalid_argument("tree json: " + where + " limits must be [min, max]");
        }
        spec.limits = JointLimits{lim[0].get<double>(), lim[1].get<double>()};
        chain[i] = spec;
    }
    return chain;
}

}  // namespace

json tree_to_json(const KinematicTree& tree) {
    return json{{"name", tree.name},
                {"basePose",
                 {{"rotation", rotation_to_json(tree.base_pose.rotation)},
                  {"translation", vec_to_json(tree.base_pose.translation)}}},
                {"leftChain", chain_to_json(tree.left_chain)},
                {"rightChain", chain_to_json(tree.right_chain)},
                {"footOffset",
                 {{"left", vec_to_json(tree.left_foot_offset)},
                  {"right", vec_to_json(tree.right_foot_offset)}}}};
}

KinematicTree tree_from_json(const json& doc) {
    try {
        KinematicTree tree;
        tree.name = doc.at("name").get<std::string>();
        const json& base = doc.at("basePose");
        tree.base_pose = Transform{rotation_from_json(base.at("rotation"), "basePose.rotation"),
                                   vec_from_json(base.at("translation"), "basePose.translation")};
        tree.left_chain = chain_from_json(doc.at("leftChain"), Side::Left);
        tree.right_chain = chain_from_json(doc.at("rightChain"), Side::Right);
        const json& feet = doc.at("footOffset");
        tree.left_foot_offset = vec_from_json(feet.at("left"), "footOffset.left");
        tree.right_foot_offset = vec_from_json(feet.at("right"), "footOffset.right");
        tree.validate();
        return tree;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("tree json: ") + e.what());
    }
}

std::string tree_to_json_text(const KinematicTree& tree) {
    return tree_to_json(tree).dump(2) + "\n";
}

KinematicTree tree_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("tree json: ") + e.what());
    }
    return tree_from_json(doc);
}

}  // namespace exokin
