#include "hermite_ecg/service.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hermite_ecg;

  CLI::App app{"HTTP service for the Hermite-transform ECG explorer"};
  std::string dataset = env_or("HERMITE_ECG_DATASET", "fixtures/dataset");
  std::string host = env_or("HERMITE_ECG_HOST", "127.0.0.1");
  int port = std::atoi(env_or("HERMITE_ECG_PORT", "8080").c_str());
  std::string ui_dir = env_or("HERMITE_ECG_UI_DIR", "");
  std::string pad = "error";
  ServiceOptions options;
  auto& d = options.defaults;

  app.add_option("--dataset", dataset, "Dataset directory (env HERMITE_ECG_DATASET)")->capture_default_str();
  app.add_option("--host", host, "Listen address (env HERMITE_ECG_HOST)")->capture_default_str();
  app.add_option("--port", port, "Listen port (env HERMITE_ECG_PORT)")->capture_default_str();
  app.add_option("--ui-dir", ui_dir, "Built UI bundle served at / (env HERMITE_ECG_UI_DIR)");
  app.add_option("--cors-origin", options.cors_origin, "Allowed CORS origin")->capture_default_str();
  app.add_option("--window", d.window, "Default segment length")->capture_default_str();
  app.add_option("--delta0", d.spec.delta0, "Default first grid delta")->capture_default_str();
  app.add_option("--delta-max", d.spec.delta_max, "Default last grid delta")->capture_default_str();
  app.add_option("--delta-step", d.spec.delta_step, "Default delta step")->capture_default_str();
  app.add_option("--tau-min", d.spec.tau_min, "Default smallest shift")->capture_default_str();
  app.add_option("--tau-max", d.spec.tau_max, "Default largest shift")->capture_default_str();
  app.add_option("--pad", pad, "Default pad policy")->check(CLI::IsMember({"error", "zero"}))->capture_default_str();
  app.add_flag("--demean", d.demean, "Subtract the segment mean by default");
  CLI11_PARSE(app, argc, argv);

  try {
    d.pad = parse_pad_policy(pad);
    validate_config(d);
    if (!ui_dir.empty()) options.ui_dir = ui_dir;
    AnalysisService service(load_dataset(dataset), options);
    for (const auto& f : service.dataset().failures) {
      std::cerr << "warning: skipped " << f.path.string() << ": " << f.message << "\n";
    }
    httplib::Server server;
    service.register_routes(server);
    std::cerr << "serving " << service.dataset().records.size() << " records on http://" << host << ":"
              << port << "\n";
    if (!server.listen(host, port)) {
      std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
      return 2;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::validation ? 1 : 2;
  }
  return 0;
}
