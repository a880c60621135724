// Build-time generator for the bundled scenario files. The GHZ table is
// produced by the exact Born-rule pipeline, never typed in by hand.

#include "contextus/hilbert.hpp"
#include "contextus/parity.hpp"
#include "contextus/scenario.hpp"

#include <fstream>
#include <iostream>

using namespace contextus;

namespace {

void write(const std::string& dir, const std::string& name, const scenario::EmpiricalModel& e) {
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << scenario::scenario_to_json(e);
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_scenarios <output-dir>\n";
        return 1;
    }
    std::string dir = argv[1];
    write(dir, "ghz.scenario.json",
          hilbert::empirical_model_from_state(hilbert::ghz_state(3), parity::ghz_contexts()));
    write(dir, "prbox.scenario.json", scenario::pr_box_model());
    write(dir, "coin.scenario.json", scenario::shared_coin_model());
    write(dir, "signalling.scenario.json", scenario::signalling_defect_model());
    return 0;
}
