// Exercises the HTTP adapter against a loopback server.

#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fraudlens/backends.hpp"
#include "fraudlens/errors.hpp"

using namespace fraudlens;

namespace {

struct LoopbackServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    LoopbackServer() {
        server.Post("/v1/complete", [](const httplib::Request& req, httplib::Response& res) {
            auto body = nlohmann::ordered_json::parse(req.body);
            std::string prompt = body.at("prompt").get<std::string>();
            if (prompt.find("boom") != std::string::npos) {
                res.status = 500;
                return;
            }
            nlohmann::ordered_json out;
            if (prompt.find("garble") != std::string::npos) {
                res.set_content("not json", "text/plain");
                return;
            }
            std::string auth = req.get_header_value("Authorization");
            out["text"] = "echo:" + prompt + "|auth:" + auth;
            res.set_content(out.dump(), "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~LoopbackServer() {
        server.stop();
        thread.join();
    }
};

}  // namespace

TEST_CASE("http backend posts the prompt and returns the text field") {
    LoopbackServer loopback;
    REQUIRE(loopback.port > 0);
    HttpBackend backend("http://127.0.0.1:" + std::to_string(loopback.port), 5.0);
    GenerationConfig config;
    ProviderKey key{"k1", "prov", "sekrit"};

    CompletionRequest request;
    request.prompt = "hello over http";
    CompletionResult ok = backend.complete(request, config, key);
    CHECK(ok.transport_ok);
    CHECK(ok.text.find("echo:hello over http") != std::string::npos);
    CHECK(ok.text.find("Bearer sekrit") != std::string::npos);

    request.prompt = "boom";
    CompletionResult failed = backend.complete(request, config, key);
    CHECK_FALSE(failed.transport_ok);
    CHECK(failed.error.find("500") != std::string::npos);

    request.prompt = "garble";
    CompletionResult bad_body = backend.complete(request, config, key);
    CHECK_FALSE(bad_body.transport_ok);
}

TEST_CASE("http backend reports unreachable hosts as transport failures") {
    HttpBackend backend("http://127.0.0.1:9", 0.5);  // discard port, normally closed
    GenerationConfig config;
    ProviderKey key{"k1", "prov", ""};
    CompletionRequest request;
    request.prompt = "anyone there";
    CompletionResult result = backend.complete(request, config, key);
    CHECK_FALSE(result.transport_ok);
    CHECK_FALSE(result.error.empty());
}

TEST_CASE("backend specs resolve to the right adapters") {
    std::vector<AnnotationRecord> gold;
    CHECK(make_backend("mock", MockMode::Dataset, gold)->name() == "mock");
    CHECK(make_backend("mock:fail=1;2", MockMode::Dataset, gold)->name() == "mock");
    CHECK(make_backend("echo", MockMode::Analysis, gold)->name() == "echo");
    CHECK(make_backend("bitflip:p=0.2,seed=3", MockMode::Analysis, gold)->name() == "bitflip");
    CHECK(make_backend("http://127.0.0.1:8080", MockMode::Analysis, gold)->name() == "http");
    CHECK_THROWS_AS(make_backend("carrier-pigeon", MockMode::Analysis, gold), ConfigError);
}
