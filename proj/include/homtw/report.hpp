#ifndef HOMTW_REPORT_HPP
#define HOMTW_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace homtw {

/// Flat, ordered key/value report. Serializes as "key: value" lines or as a
/// JSON object (repeated keys become arrays). Output is byte-stable for
/// fixed inputs; wall-clock timing only appears when explicitly enabled.
struct RunReport {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, long long value) {
        fields.emplace_back(std::move(key), std::to_string(value));
    }

    std::string to_text() const;
    std::string to_json() const;
};

} // namespace homtw

#endif
