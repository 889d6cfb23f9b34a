#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tempered/cache.hpp"
#include "tempered/error.hpp"
#include "tempered/records.hpp"

using namespace tempered;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("tempered-test-" + name);
  fs::remove_all(d);
  return d;
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("record streams round trip") {
  std::stringstream s;
  RecordWriter w(s, "scan", {{"resolution", 9}});
  ScanNode n{{1, 2}, {std::complex<double>(0.1, -0.7)}, 0.123456789012345678, 2.5, false, ""};
  w.write(to_json(n));
  ScanNode m{{0, 0}, {std::complex<double>(4, 0)}, 0, 0, true, "SingularFiberEncountered"};
  w.write(to_json(m));
  CHECK(w.count() == 2);

  RecordStream r = read_records(s);
  CHECK(r.kind() == "scan");
  CHECK(r.header["resolution"] == 9);
  CHECK(r.header["version"] == kRecordsVersion);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0]["value"].get<double>() == n.value);
  CHECK(param_from_json(r.records[0]["a"]) == n.a);
  CHECK(r.records[1]["reason"] == "SingularFiberEncountered");
  CHECK_FALSE(r.records[1].contains("value"));

  ScanBox box = ScanBox::square_box({0.2, -1}, {3.8, 1}, 2);
  auto back = box_from_json(to_json(box));
  CHECK(back.intervals == box.intervals);
}

TEST_CASE("record stream rejections") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_records(in);
  };
  CHECK(code_of([&] { read(""); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("{\"format\":\"other\",\"version\":1}\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("{\"format\":\"tempered-records\",\"version\":2}\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("{\"format\":\"tempered-records\",\"version\":1}\n{oops\n"); }) == ErrorCode::ParseError);
  CHECK(read("{\"format\":\"tempered-records\",\"version\":1,\"kind\":\"seeds\"}\n\n").records.empty());
  CHECK(code_of([] { read_records_file("/nonexistent/seeds"); }) == ErrorCode::ParseError);
}

TEST_CASE("cache hits, misses and corruption") {
  Cache cache(fresh_dir("cache"));
  int calls = 0;
  auto compute = [&] {
    ++calls;
    return std::string("payload\nwith lines\n");
  };
  CHECK(cache.get_or_compute("k", compute) == "payload\nwith lines\n");
  CHECK(cache.get_or_compute("k", compute) == "payload\nwith lines\n");
  CHECK(calls == 1);
  CHECK(cache.hits() == 1);
  CHECK(cache.misses() == 1);
  CHECK_FALSE(cache.load("other").has_value());

  // Flip one payload byte: detected, recomputed and rewritten.
  {
    std::fstream f(cache.entry_path("k"), std::ios::in | std::ios::out | std::ios::binary);
    std::string all((std::istreambuf_iterator<char>(f)), {});
    f.seekp(static_cast<std::streamoff>(all.size() - 3));
    f.put('X');
  }
  CHECK(code_of([&] { cache.load("k"); }) == ErrorCode::CacheCorrupted);
  CHECK(cache.get_or_compute("k", compute) == "payload\nwith lines\n");
  CHECK(calls == 2);
  CHECK(cache.corrupted() == 1);
  CHECK(cache.load("k") == "payload\nwith lines\n");

  // A truncated header is corruption as well.
  std::ofstream(cache.entry_path("k"), std::ios::trunc) << "tempered-cache v1";
  CHECK(code_of([&] { cache.load("k"); }) == ErrorCode::CacheCorrupted);
}

TEST_CASE("cache directory from the environment") {
  const fs::path d = fresh_dir("env");
  setenv("TEMPERED_CACHE_DIR", d.c_str(), 1);
  CHECK(Cache::default_dir() == d);
  unsetenv("TEMPERED_CACHE_DIR");
  setenv("XDG_CACHE_HOME", "/xdg", 1);
  CHECK(Cache::default_dir() == fs::path("/xdg/tempered"));
  unsetenv("XDG_CACHE_HOME");
  CHECK(Cache::default_dir().filename() == "tempered");
}
