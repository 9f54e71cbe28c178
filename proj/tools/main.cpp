#include <cstdio>
#include <string>
#include <vector>

#include "qhopf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    qhopf::cli::RunResult result = qhopf::cli::run(args);
    std::fputs(result.report.to_text().c_str(), stdout);
    return result.exit_code;
}
