#include "homtw/report.hpp"

#include <json.hpp>

#include <sstream>

namespace homtw {

std::string RunReport::to_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : fields) out << k << ": " << v << "\n";
    return out.str();
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : fields) {
        if (j.contains(k)) {
            if (!j[k].is_array()) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                arr.push_back(j[k]);
                j[k] = arr;
            }
            j[k].push_back(v);
        } else {
            j[k] = v;
        }
    }
    return j.dump(2) + "\n";
}

} // namespace homtw
