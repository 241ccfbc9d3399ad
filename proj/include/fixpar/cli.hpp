#pragma once
#include <vector>
#include <string>
namespace fixpar::cli {
int run(int argc, char** argv);
}
