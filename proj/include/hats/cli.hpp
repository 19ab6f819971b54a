#ifndef HATS_CLI_HPP
#define HATS_CLI_HPP

#include <string>
#include <vector>

namespace hats {

// Command-line front end. Exit codes: 0 winning-verified / sampled-clean /
// success, 1 disproved / losing / invalid, 2 undecided / budget refusal,
// 3 input error.
int run_cli(const std::vector<std::string>& args);

} // namespace hats

#endif
