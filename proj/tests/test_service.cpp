// Copyright 2026 The ZSC Curriculum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "zsc/common/error.hpp"
#include "zsc/kitchen/game.hpp"
#include "zsc/layoutgen/generator.hpp"
#include "zsc/layoutgen/layout_text.hpp"
#include "zsc/service/checkpoint.hpp"
#include "zsc/service/config.hpp"
#include "zsc/service/layout_io.hpp"
#include "zsc/service/run.hpp"
#include "zsc/service/server.hpp"
#include "zsc/service/session.hpp"

namespace fs = std::filesystem;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = boost::asio::ip::tcp;
using nlohmann::json;
using namespace zsc;
using namespace zsc::service;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int n = 0;
    path = fs::temp_directory_path() / ("zsc_test_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& leaf = "") const { return (path / leaf).string(); }
};

std::shared_ptr<const kitchen::Layout> fixture_layout() {
  return std::make_shared<const kitchen::Layout>(layoutgen::parse_layout(testing::kFixtureLayout));
}

nn::NetworkShape small_shape() {
  nn::NetworkShape s;
  s.conv_channels = 4;
  s.hidden = 8;
  s.hidden_layers = 1;
  return s;
}

std::shared_ptr<const nn::PolicyNetwork> small_policy(std::uint64_t seed = 1) {
  return std::make_shared<const nn::PolicyNetwork>(nn::PolicyNetwork::initialized(small_shape(), seed));
}

SessionConfig session_config(SessionMode mode, const std::string& log = "") {
  SessionConfig c;
  c.id = "s-test";
  c.layout = fixture_layout();
  c.policy_id = "p0";
  c.policy = small_policy();
  c.mode = mode;
  c.kitchen.horizon = 12;
  c.seed = 5;
  c.log_path = log;
  return c;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

RunConfig tiny_run(const std::string& out) {
  RunConfig c = RunConfig::desk();
  c.generator.count = 6;
  c.curriculum.episodes_per_iter = 3;
  c.curriculum.iterations = 2;
  c.curriculum.buffer_size = 3;
  c.ppo.rollout_length = 20;
  c.ppo.epochs = 1;
  c.network = small_shape();
  c.seed = 4;
  c.out_dir = out;
  return c;
}

// Status line of a websocket upgrade attempt, read as plain HTTP.
int upgrade_status(boost::asio::io_context& ioc, const tcp::resolver::results_type& endpoints,
                   const std::string& target) {
  beast::tcp_stream stream(ioc);
  stream.connect(endpoints);
  http::request<http::empty_body> req{http::verb::get, target, 11};
  req.set(http::field::host, "127.0.0.1");
  req.set(http::field::upgrade, "websocket");
  req.set(http::field::connection, "upgrade");
  req.set(http::field::sec_websocket_key, "dGhlIHNhbXBsZSBub25jZQ==");
  req.set(http::field::sec_websocket_version, "13");
  http::write(stream, req);
  beast::flat_buffer buf;
  http::response<http::string_body> res;
  http::read(stream, buf, res);
  return res.result_int();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("run config round-trips through json and rejects unknown keys") {
  RunConfig c = RunConfig::desk();
  c.seed = 99;
  c.curriculum.scoring = curriculum::Scoring::PositiveValueLoss;
  c.ppo.clip = 0.15;
  const json j = to_json(c);
  CHECK(j["curriculum"]["scoring"] == "positive_value_loss");
  CHECK(run_config_from_json(j) == c);
  CHECK(config_hash(j) == config_hash(to_json(run_config_from_json(j))));

  json bad = j;
  bad["ppo"]["clipp"] = 0.1;
  CHECK_THROWS_AS(run_config_from_json(bad), Error);
  bad = j;
  bad["mystery"] = 1;
  CHECK_THROWS_AS(run_config_from_json(bad), Error);
  bad = j;
  bad["ppo"]["epochs"] = "eight";
  CHECK_THROWS_AS(run_config_from_json(bad), Error);
  CHECK(RunConfig{}.check().empty());
}

TEST_CASE("ppo overrides parse values by field") {
  ppo::PPOConfig c;
  apply_ppo_override(c, "epochs", "3");
  apply_ppo_override(c, "learning_rate", "0.0005");
  CHECK(c.epochs == 3);
  CHECK(c.learning_rate == 0.0005);
  CHECK_THROWS_AS(apply_ppo_override(c, "bogus", "1"), Error);
  CHECK_THROWS_AS(apply_ppo_override(c, "epochs", "many"), Error);
  const auto names = ppo_field_names();
  CHECK(std::find(names.begin(), names.end(), "gae_lambda") != names.end());
}

TEST_CASE("load_run_config reports missing files") {
  CHECK_THROWS_AS(load_run_config("/nonexistent/run.json"), Error);
  TempDir d;
  std::ofstream(d.str("c.json")) << to_json(RunConfig::desk()).dump();
  CHECK(load_run_config(d.str("c.json")) == RunConfig::desk());
}

TEST_CASE("checkpoint round trip and corruption") {
  TempDir d;
  const auto net = small_policy(3);
  save_checkpoint(d.str("a.ckpt"), *net, {"ego", 4, "abc", ""});
  const LoadedCheckpoint l = load_checkpoint(d.str("a.ckpt"));
  CHECK(l.meta.policy_id == "ego");
  CHECK(l.meta.iteration == 4);
  CHECK(l.meta.config_hash == "abc");
  CHECK(l.meta.fingerprint == net->fingerprint());
  CHECK(l.net->fingerprint() == net->fingerprint());
  CHECK(l.net->shape() == small_shape());
  CHECK_NOTHROW(load_checkpoint(d.str("a.ckpt"), small_shape()));
  CHECK_THROWS_AS(load_checkpoint(d.str("a.ckpt"), nn::NetworkShape{}), Error);

  std::string bytes = slurp(d.str("a.ckpt"));
  auto write = [&](const std::string& name, const std::string& b) {
    std::ofstream(d.str(name), std::ios::binary) << b;
    return d.str(name);
  };
  std::string flipped = bytes;
  flipped[flipped.size() - 3] ^= 0x40;
  CHECK_THROWS_AS(load_checkpoint(write("flip.ckpt", flipped)), Error);
  CHECK_THROWS_AS(load_checkpoint(write("short.ckpt", bytes.substr(0, bytes.size() - 8))), Error);
  CHECK_THROWS_AS(load_checkpoint(write("long.ckpt", bytes + "x")), Error);
  std::string magic = bytes;
  magic[0] = 'Q';
  CHECK_THROWS_AS(load_checkpoint(write("magic.ckpt", magic)), Error);
  CHECK_THROWS_AS(load_checkpoint(d.str("missing.ckpt")), Error);
}

TEST_CASE("layout directories round trip in manifest order") {
  TempDir d;
  layoutgen::GeneratorConfig g;
  g.count = 5;
  g.seed = 2;
  const auto set = layoutgen::generate(g);
  write_layout_dir(d.str("layouts"), set.layouts);
  const auto back = load_layout_dir(d.str("layouts"));
  REQUIRE(back.size() == 5u);
  for (std::size_t i = 0; i < 5; ++i) CHECK(*back[i] == set[i]);
  const json manifest = json::parse(slurp(d.str("layouts/manifest.json")));
  CHECK(manifest.size() == 5u);
  CHECK(manifest[0]["id"] == set[0].id());
  CHECK(manifest[0]["blocks"]["total"] == set[0].interactive_count());
  CHECK(read_layout_file(d.str("layouts/" + manifest[1]["file"].get<std::string>())) == set[1]);
  CHECK_THROWS_AS(load_layout_dir(d.str("nothing")), Error);
}

TEST_CASE("stepped session: STAY until done gives a full-length log") {
  TempDir d;
  PlaySession s(session_config(SessionMode::Stepped, d.str("s.jsonl")));
  const json first = s.state_frame();
  CHECK(first["type"] == "state");
  CHECK(first["t"] == 0);
  CHECK(first["grid"].size() == 5u);
  CHECK(first["grid"][0][3] == 4);  // pot
  CHECK(first["players"][0]["pos"] == json::array({3, 1}));
  CHECK(first["players"][0]["facing"] == "DOWN");
  CHECK(first["players"][0]["held"] == "nothing");
  CHECK(first["pots"][0]["ready"] == false);
  CHECK(first["done"] == false);

  for (int i = 0; i < 12; ++i) {
    const auto out = s.handle_message(R"({"type":"action","action":"STAY"})");
    REQUIRE(out.size() == 1u);
    CHECK(out[0]["t"] == i + 1);
    CHECK(out[0]["done"] == (i == 11));
  }
  CHECK(s.done());
  const auto late = s.handle_message(R"({"type":"action","action":"UP"})");
  CHECK(late[0]["type"] == "error");
  CHECK(s.t() == 12);

  const auto log = read_jsonl(d.str("s.jsonl"));
  int steps = 0;
  for (const auto& r : log) steps += r["type"] == "step";
  CHECK(steps == 12);
  CHECK(log.front()["type"] == "session");
}

TEST_CASE("malformed messages get error frames and leave the session alone") {
  PlaySession s(session_config(SessionMode::Stepped));
  const json before = s.state_frame();
  for (const char* bad : {"not json", "[1,2]", R"({"type":7})", R"({"type":"action"})",
                          R"({"type":"action","action":"JUMP"})", R"({"type":"dance"})",
                          R"({"type":"survey","collaborative_rank":1,"preference_rank":2})",
                          R"({"type":"survey","collaborative_rank":"1","preference_rank":2})"}) {
    CAPTURE(bad);
    const auto out = s.handle_message(bad);
    REQUIRE(out.size() == 1u);
    CHECK(out[0]["type"] == "error");
    CHECK(out[0]["message"].is_string());
  }
  CHECK(s.state_frame() == before);
}

TEST_CASE("realtime session: missing input defaults to STAY") {
  auto cfg = session_config(SessionMode::Realtime);
  cfg.kitchen.horizon = 3;
  PlaySession s(cfg);
  CHECK(s.handle_message(R"({"type":"action","action":"LEFT"})").empty());
  CHECK(s.t() == 0);
  auto f = s.tick();
  REQUIRE(f.has_value());
  CHECK((*f)["players"][0]["pos"] == json::array({2, 1}));
  f = s.tick();  // nothing pending
  CHECK((*f)["players"][0]["pos"] == json::array({2, 1}));
  const auto h = s.history();
  CHECK(h[0][0] == kitchen::Action::Left);
  CHECK(h[1][0] == kitchen::Action::Stay);
  s.tick();
  CHECK(s.done());
  CHECK_FALSE(s.tick().has_value());
}

TEST_CASE("survey after done is logged once") {
  TempDir d;
  auto cfg = session_config(SessionMode::Stepped, d.str("s.jsonl"));
  cfg.kitchen.horizon = 2;
  PlaySession s(cfg);
  s.handle_message(R"({"type":"action","action":"STAY"})");
  s.handle_message(R"({"type":"action","action":"STAY"})");
  const auto ack = s.handle_message(R"({"type":"survey","collaborative_rank":2,"preference_rank":1})");
  CHECK(ack[0]["type"] == "survey_ack");
  const auto again = s.handle_message(R"({"type":"survey","collaborative_rank":1,"preference_rank":1})");
  CHECK(again[0]["type"] == "error");
  const auto log = read_jsonl(d.str("s.jsonl"));
  CHECK(log.back()["type"] == "survey");
  CHECK(log.back()["collaborative_rank"] == 2);
  CHECK(log.back()["preference_rank"] == 1);
}

TEST_CASE("a session log replays to the same rewards") {
  TempDir d;
  auto cfg = session_config(SessionMode::Stepped, d.str("s.jsonl"));
  cfg.kitchen.horizon = testing::kFixtureHorizon;
  cfg.human_seat = 0;
  PlaySession s(cfg);
  for (kitchen::Action a : testing::fixture_cook_script()) {
    s.handle_message(json{{"type", "action"}, {"action", std::string(kitchen::action_name(a))}}.dump());
  }
  const auto log = read_jsonl(d.str("s.jsonl"));
  const kitchen::Kitchen k(cfg.layout, cfg.kitchen);
  kitchen::GameState st = k.reset();
  double total = 0;
  for (const auto& r : log) {
    if (r["type"] != "step") continue;
    const kitchen::JointAction ja = {kitchen::parse_action(r["actions"][0].get<std::string>()),
                                     kitchen::parse_action(r["actions"][1].get<std::string>())};
    const auto res = k.step(st, ja);
    st = res.state;
    total += res.reward;
    CHECK(res.reward == r["reward"].get<double>());
    CHECK(st.t == r["t"].get<int>());
  }
  CHECK(total == s.reward_total());
  CHECK(total == log.back()["reward_total"].get<double>());
}

TEST_CASE("REST routes") {
  TempDir d;
  ServerConfig sc;
  sc.policies = {{"p0", small_policy(), 1, small_policy()->fingerprint()}};
  sc.layouts = {fixture_layout()};
  sc.kitchen.horizon = 5;
  sc.log_dir = d.str();
  Server server(sc);

  auto r = server.handle_rest("GET", "/api/policies", "");
  CHECK(r.status == 200);
  CHECK(r.body[0]["id"] == "p0");
  r = server.handle_rest("GET", "/api/layouts", "");
  CHECK(r.status == 200);
  CHECK(r.body[0]["width"] == 7);
  CHECK(r.body[0]["text"] == std::string(testing::kFixtureLayout));

  const std::string lid = fixture_layout()->id();
  r = server.handle_rest("POST", "/api/sessions",
                         json{{"layout_id", lid}, {"policy_id", "p0"}, {"seat", 1}, {"mode", "stepped"}}.dump());
  CHECK(r.status == 201);
  const std::string sid = r.body["session_id"];
  REQUIRE(server.find_session(sid) != nullptr);
  CHECK(server.find_session(sid)->config().human_seat == 1);
  r = server.handle_rest("GET", "/api/sessions/" + sid, "");
  CHECK(r.status == 200);
  CHECK(r.body["type"] == "state");

  CHECK(server.handle_rest("POST", "/api/sessions", "{").status == 400);
  CHECK(server.handle_rest("POST", "/api/sessions", json{{"layout_id", "nope"}, {"policy_id", "p0"}}.dump()).status ==
        404);
  CHECK(server.handle_rest("POST", "/api/sessions", json{{"layout_id", lid}, {"policy_id", "zz"}}.dump()).status ==
        404);
  CHECK(server.handle_rest("POST", "/api/sessions", json{{"layout_id", lid}, {"policy_id", "p0"}, {"seat", 2}}.dump())
            .status == 400);
  CHECK(server.handle_rest("POST", "/api/sessions",
                           json{{"layout_id", lid}, {"policy_id", "p0"}, {"mode", "turbo"}}.dump())
            .status == 400);
  CHECK(server.handle_rest("GET", "/api/sessions/missing", "").status == 404);
  CHECK(server.handle_rest("DELETE", "/api/policies", "").status == 405);
  CHECK(server.handle_rest("GET", "/nowhere", "").status == 404);
}

TEST_CASE("HTTP and websocket round trip against a live server") {
  TempDir d;
  ServerConfig sc;
  sc.policies = {{"p0", small_policy(), 1, small_policy()->fingerprint()}};
  sc.layouts = {fixture_layout()};
  sc.kitchen.horizon = 4;
  sc.log_dir = d.str();
  Server server(sc);
  const unsigned short port = server.start();
  REQUIRE(port != 0);

  boost::asio::io_context ioc;
  tcp::resolver resolver(ioc);
  const auto endpoints = resolver.resolve("127.0.0.1", std::to_string(port));

  // plain HTTP create
  beast::tcp_stream stream(ioc);
  stream.connect(endpoints);
  http::request<http::string_body> req{http::verb::post, "/api/sessions", 11};
  req.set(http::field::host, "127.0.0.1");
  req.set(http::field::content_type, "application/json");
  req.body() = json{{"layout_id", fixture_layout()->id()}, {"policy_id", "p0"}, {"mode", "stepped"}}.dump();
  req.prepare_payload();
  http::write(stream, req);
  beast::flat_buffer buf;
  http::response<http::string_body> res;
  http::read(stream, buf, res);
  CHECK(res.result_int() == 201);
  const std::string sid = json::parse(res.body())["session_id"];
  beast::error_code ec;
  stream.socket().shutdown(tcp::socket::shutdown_both, ec);

  websocket::stream<tcp::socket> ws(ioc);
  boost::asio::connect(ws.next_layer(), endpoints);
  ws.handshake("127.0.0.1", "/api/sessions/" + sid + "/play");
  auto read_frame = [&] {
    beast::flat_buffer b;
    ws.read(b);
    return json::parse(beast::buffers_to_string(b.data()));
  };
  json f = read_frame();
  CHECK(f["type"] == "state");
  CHECK(f["t"] == 0);

  // a second socket on the same session is refused
  CHECK(upgrade_status(ioc, endpoints, "/api/sessions/" + sid + "/play") == 409);

  ws.write(boost::asio::buffer(std::string("garbage")));
  f = read_frame();
  CHECK(f["type"] == "error");
  for (int i = 0; i < 4; ++i) {
    ws.write(boost::asio::buffer(json{{"type", "action"}, {"action", "STAY"}}.dump()));
    f = read_frame();
    CHECK(f["t"] == i + 1);
  }
  CHECK(f["done"] == true);
  ws.write(boost::asio::buffer(std::string(R"({"type":"survey","collaborative_rank":1,"preference_rank":2})")));
  f = read_frame();
  CHECK(f["type"] == "survey_ack");
  ws.close(websocket::close_code::normal);

  // unknown session ids are refused at the handshake
  CHECK(upgrade_status(ioc, endpoints, "/api/sessions/s9999-deadbeef/play") == 404);
  server.stop();

  const auto log = read_jsonl(d.str(sid + ".jsonl"));
  CHECK(log.back()["type"] == "survey");
  CHECK(log.back()["preference_rank"] == 2);
}

TEST_CASE("realtime websocket session ticks on its own") {
  TempDir d;
  ServerConfig sc;
  sc.policies = {{"p0", small_policy(), 1, ""}};
  sc.layouts = {fixture_layout()};
  sc.kitchen.horizon = 5;
  sc.log_dir = d.str();
  Server server(sc);
  const unsigned short port = server.start();
  const auto created = server.handle_rest(
      "POST", "/api/sessions",
      json{{"layout_id", fixture_layout()->id()}, {"policy_id", "p0"}, {"mode", "realtime"}, {"tick_ms", 5}}.dump());
  REQUIRE(created.status == 201);
  const std::string sid = created.body["session_id"];

  boost::asio::io_context ioc;
  websocket::stream<tcp::socket> ws(ioc);
  tcp::resolver resolver(ioc);
  boost::asio::connect(ws.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
  ws.handshake("127.0.0.1", "/api/sessions/" + sid + "/play");
  json last = json::object();
  for (int i = 0; i < 20 && !last.value("done", false); ++i) {
    beast::flat_buffer b;
    ws.read(b);
    last = json::parse(beast::buffers_to_string(b.data()));
  }
  CHECK(last["done"] == true);
  CHECK(last["t"] == 5);
  ws.close(websocket::close_code::normal);
  server.stop();
}

TEST_CASE("train_run writes a complete, reproducible run directory") {
  TempDir d;
  const RunConfig a = tiny_run(d.str("a"));
  const TrainSummary s = train_run(a);
  CHECK(s.iterations == 2);
  CHECK(s.ppo_updates == s.replay_episodes);
  for (const char* f : {"config.json", "metrics.jsonl", "population.json", "layouts/manifest.json",
                        "checkpoints/iter_1.ckpt", "checkpoints/iter_2.ckpt"}) {
    CAPTURE(f);
    CHECK(fs::exists(d.path / "a" / f));
  }
  const auto metrics = read_jsonl(d.str("a/metrics.jsonl"));
  CHECK(metrics.size() == 6u);
  for (const char* key : {"iter", "episode", "global_episode", "co_player", "layout_id", "branch", "S", "total_reward",
                          "updated", "ego_seat", "buffer_size"}) {
    CHECK(metrics[0].contains(key));
  }
  const json pop = json::parse(slurp(d.str("a/population.json")));
  CHECK(pop["members"].size() == 2u);
  CHECK(run_config_from_json(json::parse(slurp(d.str("a/config.json")))) == a);
  const auto ck = load_checkpoint(d.str("a/checkpoints/iter_2.ckpt"));
  CHECK(ck.meta.iteration == 2);

  RunConfig b = a;
  b.out_dir = d.str("b");
  train_run(b);
  CHECK(slurp(d.str("a/metrics.jsonl")) == slurp(d.str("b/metrics.jsonl")));
  // weights too, not just what they happened to sample
  for (const char* f : {"checkpoints/iter_1.ckpt", "checkpoints/iter_2.ckpt", "population.json"}) {
    CAPTURE(f);
    CHECK(slurp(d.path / "a" / f) == slurp(d.path / "b" / f));
  }

  // refuses to overwrite, and a broken config leaves no directory behind
  CHECK_THROWS_AS(train_run(a), Error);
  RunConfig broken = a;
  broken.out_dir = d.str("c");
  broken.layouts_dir = d.str("does-not-exist");
  CHECK_THROWS_AS(train_run(broken), Error);
  CHECK_FALSE(fs::exists(d.path / "c"));
}
