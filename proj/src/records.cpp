#include "eqq/records.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include <json.hpp>

namespace eqq {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> sorted_keys(std::span<const OutputRecord> records, bool inputs) {
    std::set<std::string> keys;
    for (const OutputRecord& r : records)
        for (const auto& [k, v] : (inputs ? r.inputs : r.outputs)) keys.insert(k);
    return {keys.begin(), keys.end()};
}

} // namespace

std::string to_csv(std::span<const OutputRecord> records) {
    const auto in_keys = sorted_keys(records, true);
    const auto out_keys = sorted_keys(records, false);
    std::ostringstream os;
    os << "experiment";
    for (const auto& k : in_keys) os << ',' << k;
    for (const auto& k : out_keys) os << ',' << k;
    os << '\n';
    for (const OutputRecord& r : records) {
        os << r.experiment;
        for (const auto& k : in_keys) {
            const auto it = r.inputs.find(k);
            os << ',' << (it == r.inputs.end() ? "" : it->second);
        }
        for (const auto& k : out_keys) {
            const auto it = r.outputs.find(k);
            os << ',' << (it == r.outputs.end() ? "" : it->second);
        }
        os << '\n';
    }
    return os.str();
}

std::string to_json(std::span<const OutputRecord> records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const OutputRecord& r : records) {
        nlohmann::ordered_json obj;
        obj["experiment"] = r.experiment;
        nlohmann::ordered_json ins;
        for (const auto& [k, v] : r.inputs) ins[k] = v; // std::map is already sorted
        nlohmann::ordered_json outs;
        for (const auto& [k, v] : r.outputs) outs[k] = v;
        obj["inputs"] = std::move(ins);
        obj["outputs"] = std::move(outs);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

} // namespace eqq
