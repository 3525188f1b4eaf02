// Regenerates the tiling fixture table from the geometric constructor.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tiling_oracle.hpp"

int main(int argc, char** argv) {
  std::string out = argc > 1 ? argv[1] : "tilings_data.inc";
  const std::vector<std::string> names = {
      "3.3.3.3.3.3", "4.4.4.4", "6.6.6",    "3.3.3.3.6", "3.3.3.4.4", "3.3.4.3.4",
      "3.4.6.4",     "3.6.3.6", "3.12.12",  "4.6.12",    "4.8.8",
  };
  try {
    std::string text = tiling_oracle::render_fixture_table(names);
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot open " << out << "\n";
      return 1;
    }
    f << text;
    std::cout << "wrote " << out << " (" << names.size() << " tilings)\n";
  } catch (const std::exception& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
