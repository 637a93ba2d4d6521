#include "edlgp/cli/commands.hpp"

int main(int argc, char** argv)
{
    return edlgp::cli::main(argc, argv);
}
