// Verification suite entry point: one pass/fail line per check.

#include <cstdio>

#include "mofo/acceptance.hpp"

int main()
{
    const int failures = mofo::acceptance::run_all(
        "acceptance_out",
        [](const mofo::acceptance::CheckResult& result)
        {
            std::printf("%s\n", mofo::acceptance::format_line(result).c_str());
            std::fflush(stdout);
        });
    if (failures > 0)
    {
        std::printf("%d check(s) failed\n", failures);
        return 1;
    }
    std::printf("all checks passed\n");
    return 0;
}
