#include "homtw/graph_spec.hpp"

#include "homtw/errors.hpp"
#include "homtw/named_graphs.hpp"
#include "homtw/pace_io.hpp"

#include <algorithm>

namespace homtw {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

} // namespace

Graph parse_graph_spec(const std::string& spec, std::int64_t vertex_limit) {
    if (spec.empty()) throw ParseError("empty graph specifier");
    if (spec[0] == '@') return load_graph(spec.substr(1));
    if (spec.rfind("product:", 0) == 0) {
        std::string rest = spec.substr(8);
        // split on commas, re-attaching bare-number segments to the factor
        // before them (kneser:5,2 keeps its second parameter)
        std::vector<std::string> factors_spec;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            std::string tok = rest.substr(pos, next - pos);
            if (all_digits(tok) && !factors_spec.empty())
                factors_spec.back() += "," + tok;
            else
                factors_spec.push_back(tok);
            pos = next + 1;
        }
        if (factors_spec.empty()) throw ParseError("product needs at least one factor");
        std::vector<Graph> factors;
        for (const auto& fs : factors_spec) {
            if (fs.rfind("product:", 0) == 0)
                throw ParseError("nested product specifiers are not supported");
            factors.push_back(parse_graph_spec(fs, vertex_limit));
        }
        return direct_product(factors, vertex_limit);
    }
    return named_graph(spec);
}

} // namespace homtw
