// One sample problem per subcommand, shared by the CLI and acceptance suites.
#ifndef K0LAT_TESTS_CLI_CASES_HPP
#define K0LAT_TESTS_CLI_CASES_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "k0lat/cli.hpp"

namespace cli_cases {

inline std::string data(const std::string& name) { return std::string(K0LAT_TEST_DATA_DIR) + "/" + name; }

struct Case {
    std::string command;
    std::string file;
    std::vector<std::string> extra;
};

inline const std::vector<Case>& all()
{
    static const std::vector<Case> cases{
        {"hom", "dedekind.json", {}},
        {"retract", "dedekind.json", {}},
        {"iso", "pair_same.json", {}},
        {"probe", "dedekind.json", {}},
        {"decomp-p", "decomp_order.json", {}},
        {"idempotents", "idempotents_m2f2.json", {}},
        {"blowup-check", "blowup.json", {}},
        {"class-reduce", "class_reduce.json", {}},
        {"k3-kernel", "k3_kernel.json", {}},
        {"scalar-test", "scalar_test.json", {}},
        {"md-count", "q2_D2.json", {}},
        {"unit-lift", "unit_lift.json", {}},
    };
    return cases;
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

inline Result run(const std::string& command, const std::string& file, std::vector<std::string> extra = {})
{
    std::vector<std::string> args{command, "--input", data(file)};
    args.insert(args.end(), extra.begin(), extra.end());
    std::ostringstream out, err;
    int code = k0lat::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace cli_cases

#endif
