#include "cli/commands.hpp"

int main(int argc, char** argv)
{
    return ghgif::cli::run(argc, argv);
}
