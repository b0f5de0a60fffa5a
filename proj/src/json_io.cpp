#include "sdr/json_io.hpp"

#include <json.hpp>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sdr {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string label_of(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    throw std::invalid_argument("family document: labels must be strings or integers");
}

}  // namespace

FamilyDocument parse_family(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("family document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array())
        throw std::invalid_argument("family document: expected object with a \"sets\" array");
    const auto& sets = doc["sets"];
    if (sets.empty()) throw std::invalid_argument("family document: family must have at least one member");

    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<int>> members;
    for (const auto& arr : sets) {
        if (!arr.is_array()) throw std::invalid_argument("family document: each member must be an array");
        if (arr.empty()) throw std::invalid_argument("family document: empty member set");
        std::vector<int> mem;
        std::set<std::string> seen;
        for (const auto& v : arr) {
            std::string lbl = label_of(v);
            if (!seen.insert(lbl).second)
                throw std::invalid_argument("family document: duplicate label \"" + lbl +
                                            "\" inside one member set");
            auto it = index.find(lbl);
            if (it == index.end()) {
                it = index.emplace(lbl, static_cast<int>(labels.size())).first;
                labels.push_back(lbl);
            }
            mem.push_back(it->second);
        }
        members.push_back(std::move(mem));
    }

    FamilyDocument out{make_family(static_cast<int>(labels.size()), members, labels), std::nullopt,
                       std::nullopt};
    if (doc.contains("t")) {
        if (!doc["t"].is_number_integer() || doc["t"].get<long long>() < 0)
            throw std::invalid_argument("family document: \"t\" must be a nonnegative integer");
        out.t = doc["t"].get<int>();
    }
    if (doc.contains("valuation")) {
        if (!doc["valuation"].is_array())
            throw std::invalid_argument("family document: \"valuation\" must be an array");
        std::vector<int> w;
        for (const auto& v : doc["valuation"]) {
            if (!v.is_number_integer() || v.get<long long>() < 1)
                throw std::invalid_argument("family document: valuation entries must be integers >= 1");
            w.push_back(v.get<int>());
        }
        if (static_cast<int>(w.size()) != out.family.n())
            throw std::invalid_argument("family document: valuation length mismatch");
        out.valuation = Valuation(std::move(w));
    }
    return out;
}

std::string serialize_family(const FamilyDocument& doc) {
    ordered_json out;
    ordered_json sets = ordered_json::array();
    for (int i = 0; i < doc.family.n(); ++i) {
        ordered_json mem = ordered_json::array();
        doc.family.member(i).for_each([&](int x) { mem.push_back(doc.family.label(x)); });
        sets.push_back(std::move(mem));
    }
    out["sets"] = std::move(sets);
    if (doc.t) out["t"] = *doc.t;
    if (doc.valuation) out["valuation"] = doc.valuation->a;
    return out.dump();
}

}  // namespace sdr
