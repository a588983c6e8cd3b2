// Drives the command-line binary (path in argv[1]) and checks that its
// payloads are byte-identical to the library's own serialization, and that
// exit codes follow the contract: 0 success, 1 check failure, 2 usage error.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "curvex/curvex.hpp"

namespace {

int failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_command(const std::string& command) {
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    std::perror("popen");
    std::exit(1);
  }
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  } else {
    std::cout << "ok: " << what << "\n";
  }
}

std::string write_temp(const std::string& name, const std::string& payload) {
  const std::string path = "/tmp/curvex_cli_test_" + name;
  std::ofstream out(path, std::ios::binary);
  out << payload;
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_roundtrip <path-to-curvex>\n";
    return 2;
  }
  const std::string cli = argv[1];
  using namespace curvex;

  {
    const RunResult r = run_command(cli + " quotient --level 5 2>/dev/null");
    expect(r.exit_code == 0, "quotient --level 5 exits 0");
    expect(r.output == complex_to_json_text(farey_level(5)),
           "quotient payload is byte-identical to the library JSON");
    const auto doc = nlohmann::json::parse(r.output);
    expect(doc.at("vertices").size() == 12 && doc.at("edges").size() == 30 &&
               doc.at("triangles").size() == 20,
           "quotient --level 5 reports the icosahedron counts");
  }

  {
    const RunResult r = run_command(cli + " quotient --level 99999 2>/tmp/curvex_cli_err");
    expect(r.exit_code == 2, "quotient --level 99999 exits 2");
    std::ifstream err("/tmp/curvex_cli_err");
    std::string message((std::istreambuf_iterator<char>(err)),
                        std::istreambuf_iterator<char>());
    expect(message.find("modulus-limit") != std::string::npos,
           "modulus-limit error is named on stderr");
  }

  {
    const RunResult r = run_command(cli + " farey --depth 2 --format dot 2>/dev/null");
    expect(r.exit_code == 0, "farey --depth 2 --format dot exits 0");
    expect(r.output == complex_to_dot(farey_ball(2)), "dot payload matches the library");
  }

  {
    const RunResult r = run_command(cli + " product --surface 1,1+1,1 --level 2 2>/dev/null");
    const ProductComplex p = product_pants({farey_level(2), farey_level(2)});
    expect(r.exit_code == 0 && r.output == complex_to_json_text(p.flattened),
           "product payload is byte-identical to the library JSON");
  }

  {
    const ProductComplex p = product_star({gstar_level(2), gstar_level(2)});
    const std::string path = write_temp("rook.json", complex_to_json_text(p.flattened));
    const RunResult r = run_command(cli + " reconstruct --in " + path + " 2>/dev/null");
    expect(r.exit_code == 0, "reconstruct exits 0");
    const auto doc = nlohmann::json::parse(r.output);
    expect(doc.at("members").get<int>() == 16 && doc.at("roundtrip_iso").get<bool>(),
           "reconstruct reports 16 members and a clean roundtrip");

    const RunResult nerve_run = run_command(cli + " nerve --in " + path + " 2>/dev/null");
    const auto nerve_doc = nlohmann::json::parse(nerve_run.output);
    expect(nerve_run.exit_code == 0 && nerve_doc.at("vertices").size() == 6 &&
               nerve_doc.at("edges").size() == 9,
           "nerve of the fiber cover is K3,3-sized");
  }

  {
    const std::string path = write_temp("f4.json", complex_to_json_text(farey_level(4)));
    const RunResult r = run_command(cli + " aut --in " + path + " --triangles 2>/dev/null");
    expect(r.exit_code == 0, "aut exits 0");
    const auto doc = nlohmann::json::parse(r.output);
    expect(doc.at("order").get<std::uint64_t>() == 48 &&
               doc.at("orientation_preserving_index").get<int>() == 2,
           "aut of the octahedron stage has order 48, split index 2");
  }

  {
    const RunResult r = run_command(cli + " tower --surface 1,1 --levels 2,4 2>/dev/null");
    expect(r.exit_code == 0, "tower exits 0");
    const auto doc = nlohmann::json::parse(r.output);
    expect(doc.at("levels") == nlohmann::json({2, 4}), "tower reports its levels");
    expect(doc.at("compatible_order").get<std::uint64_t>() >= 1, "tower reports a group order");
  }

  {
    const RunResult r = run_command(cli + " nonsense 2>/dev/null");
    expect(r.exit_code == 2, "unknown subcommand exits 2");
  }

  {
    const RunResult r = run_command(cli + " verify --suite default 2>/dev/null");
    expect(r.exit_code == 0, "verify --suite default exits 0");
    expect(r.output.find("FAIL") == std::string::npos, "verify table has no FAIL rows");
    expect(r.output.find("PASS") != std::string::npos, "verify table has PASS rows");
  }

  if (failures == 0) {
    std::cout << "cli roundtrip: all good\n";
    return 0;
  }
  std::cerr << "cli roundtrip: " << failures << " failure(s)\n";
  return 1;
}
