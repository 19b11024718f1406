#ifndef HOMTW_CLI_HPP
#define HOMTW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace homtw {

// Exit codes: 0 definite verdict, 1 usage/parse/validation error,
// 2 inconclusive (budget or size limit hit).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace homtw

#endif
