#pragma once

// Operator workflows behind the CLI: each command consumes a resolved option
// bag and returns a process-style status plus printable output.

#include <string>

#include "fraudlens/config.hpp"

namespace fraudlens {

struct CommandResult {
    int status = 0;  // 0 ok, 1 data error, 2 usage error
    std::string output;
    std::string error;
};

CommandResult cmd_plan(const OptionBag& options);
CommandResult cmd_generate(const OptionBag& options);
CommandResult cmd_validate(const OptionBag& options);
CommandResult cmd_evaluate(const OptionBag& options);
CommandResult cmd_compare(const OptionBag& options);
CommandResult cmd_parse(const OptionBag& options);
CommandResult cmd_prompt(const OptionBag& options);

}  // namespace fraudlens
