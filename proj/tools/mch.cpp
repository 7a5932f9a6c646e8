// mch: drive simulations of the cubic Camassa-Holm-type equation
//   m_t + (u^2 - u_x^2) m_x + 2 u_x m^2 + gamma u_x = 0,  m = u - u_xx
// on a periodic box, with the diagnostic battery from the core library.
//
// Subcommands:
//   mch run --config <file> [--out <dir>] [--preset <name>] [--override k=v ...] [--sweep]
//   mch presets
//   mch check <dir>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "mch/run.hpp"

namespace {

int usage() {
  std::cerr
      << "usage:\n"
      << "  mch run [--config <file>] [--preset <name>] [--out <dir>]\n"
      << "          [--override key=value ...] [--sweep]\n"
      << "  mch presets\n"
      << "  mch check <dir>\n"
      << "\n"
      << "run executes one configuration (preset < config file < overrides)\n"
      << "and writes timeseries.csv, snapshots, bounds.json, diagnostics.json\n"
      << "and manifest.json to the output directory. Exit codes: 0 end of run,\n"
      << "2 blow-up detected, 3 step-size underflow, 4 non-finite state,\n"
      << "1 usage/configuration error.\n"
      << "\n"
      << "--sweep accepts repeated --config/--preset and runs them\n"
      << "concurrently, each into <out>/<name>; MCH_THREADS caps the pool.\n";
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int cmd_run(int argc, char** argv) {
  std::vector<std::string> configs;
  std::vector<std::string> presets;
  std::vector<std::string> overrides;
  std::string out;
  bool sweep = false;

  for (int i = 0; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) throw std::invalid_argument("missing value after " + a);
      return argv[++i];
    };
    if (a == "--config") configs.push_back(next());
    else if (a == "--preset") presets.push_back(next());
    else if (a == "--out") out = next();
    else if (a == "--override") overrides.push_back(next());
    else if (a == "--sweep") sweep = true;
    else throw std::invalid_argument("unknown option " + a);
  }

  std::vector<mch::RunConfig> jobs;
  if (presets.empty() && configs.empty())
    throw std::invalid_argument("run: need --config or --preset");
  if (!sweep && presets.size() + configs.size() > 1 &&
      !(presets.size() == 1 && configs.size() == 1))
    throw std::invalid_argument("run: multiple configurations need --sweep");

  if (sweep) {
    for (const std::string& p : presets) {
      mch::RunConfig cfg = mch::preset(p);
      for (const std::string& o : overrides) mch::apply_override(cfg, o);
      if (!out.empty()) cfg.out_dir = out + "/" + p;
      jobs.push_back(cfg);
    }
    for (const std::string& c : configs) {
      mch::RunConfig cfg = mch::parse_config(read_file(c));
      for (const std::string& o : overrides) mch::apply_override(cfg, o);
      if (!out.empty()) {
        std::string stem = c;
        const auto slash = stem.find_last_of('/');
        if (slash != std::string::npos) stem = stem.substr(slash + 1);
        const auto dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        cfg.out_dir = out + "/" + stem;
      }
      jobs.push_back(cfg);
    }
  } else {
    mch::RunConfig cfg;
    if (!presets.empty()) cfg = mch::preset(presets.front());
    if (!configs.empty())
      cfg = mch::parse_config(read_file(configs.front()), cfg);
    for (const std::string& o : overrides) mch::apply_override(cfg, o);
    if (!out.empty()) cfg.out_dir = out;
    jobs.push_back(cfg);
  }

  if (!sweep) {
    const mch::RunResult res = mch::run(jobs.front());
    std::cout << "termination: " << mch::to_string(res.termination)
              << "  (outputs in " << res.out_dir << ")\n";
    return res.exit_code;
  }

  unsigned pool = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("MCH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) pool = static_cast<unsigned>(v);
  }
  pool = std::max(1u, std::min<unsigned>(pool, jobs.size()));

  std::vector<int> codes(jobs.size(), 0);
  std::vector<std::string> errors(jobs.size());
  std::vector<std::thread> workers;
  std::atomic<size_t> cursor{0};
  for (unsigned w = 0; w < pool; ++w)
    workers.emplace_back([&]() {
      while (true) {
        const size_t i = cursor.fetch_add(1);
        if (i >= jobs.size()) return;
        try {
          codes[i] = mch::run(jobs[i]).exit_code;
        } catch (const std::exception& e) {
          codes[i] = 1;
          errors[i] = e.what();
        }
      }
    });
  for (auto& t : workers) t.join();

  int worst = 0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    std::cout << jobs[i].out_dir << ": exit " << codes[i];
    if (!errors[i].empty()) std::cout << " (" << errors[i] << ")";
    std::cout << "\n";
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  const std::string cmd = argv[1];
  try {
    if (cmd == "run") return cmd_run(argc - 2, argv + 2);
    if (cmd == "presets") {
      for (const std::string& name : mch::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (cmd == "check") {
      if (argc != 3) return usage();
      const std::vector<std::string> problems = mch::check_output_dir(argv[2]);
      if (problems.empty()) {
        std::cout << "ok\n";
        return 0;
      }
      for (const std::string& p : problems) std::cerr << p << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return usage();
}
