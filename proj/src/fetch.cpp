// Copyright 2026 The Georisk Authors
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

#include <curl/curl.h>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <span>

#include "georisk/csv.hpp"
#include "georisk/errors.hpp"
#include "georisk/ingest.hpp"
#include "georisk/log.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace georisk {

namespace {

struct RemoteFile {
  const char* relative_url;
  const char* filename;
  // Column that must appear in the header of a CSV file; empty for non-CSV.
  const char* required_column;
};

constexpr const char* kNycBaseUrl =
    "https://raw.githubusercontent.com/nychealth/coronavirus-data/master";

constexpr RemoteFile kNycFiles[] = {
    {"totals/data-by-modzcta.csv", "data-by-modzcta.csv", "MODIFIED_ZCTA"},
    {"Geography-resources/MODZCTA_2010_WGS1984.geo.json",
     "MODZCTA_2010_WGS1984.geo.json", ""},
};

void ensure_curl() {
  static std::once_flag once;
  std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

struct CurlHandle {
  CURL* handle = curl_easy_init();
  ~CurlHandle() {
    if (handle) curl_easy_cleanup(handle);
  }
};

size_t write_to_file(char* data, size_t size, size_t nmemb, void* user) {
  auto* out = static_cast<std::ofstream*>(user);
  out->write(data, static_cast<std::streamsize>(size * nmemb));
  return out->good() ? size * nmemb : 0;
}

void download(const std::string& url, const fs::path& dest, long timeout_seconds) {
  ensure_curl();
  std::ofstream out(dest, std::ios::binary);
  if (!out) throw IoError("cannot write " + dest.string());
  CurlHandle curl;
  if (!curl.handle) throw NetworkError("curl initialisation failed");
  curl_easy_setopt(curl.handle, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.handle, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.handle, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.handle, CURLOPT_TIMEOUT, timeout_seconds);
  curl_easy_setopt(curl.handle, CURLOPT_CONNECTTIMEOUT, 15L);
  curl_easy_setopt(curl.handle, CURLOPT_WRITEFUNCTION, write_to_file);
  curl_easy_setopt(curl.handle, CURLOPT_WRITEDATA, &out);
  curl_easy_setopt(curl.handle, CURLOPT_USERAGENT, "georisk-fetch/1.0");
  char errbuf[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(curl.handle, CURLOPT_ERRORBUFFER, errbuf);
  const CURLcode rc = curl_easy_perform(curl.handle);
  out.close();
  if (rc != CURLE_OK) {
    throw NetworkError(url + ": " + (errbuf[0] ? errbuf : curl_easy_strerror(rc)));
  }
}

std::string sha256_hex(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* kHex = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

void check_csv_header(const fs::path& path, const std::string& required) {
  std::ifstream in(path, std::ios::binary);
  std::string line;
  if (!csv::read_line(in, line)) {
    throw SourceSchemaChanged(path.filename().string() + " is empty");
  }
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  for (const auto& column : csv::split_line(line)) {
    if (csv::trim(column) == required) return;
  }
  throw SourceSchemaChanged(path.filename().string() + " has no " + required +
                            " column");
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void require_writable(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw IoError("output directory " + out_dir.string() +
                  " cannot be created: " + (ec ? ec.message() : "not a directory"));
  }
  const fs::path probe = out_dir / ".georisk-write-probe";
  {
    std::ofstream out(probe, std::ios::binary);
    if (!out || !(out << "probe")) {
      throw IoError("output directory " + out_dir.string() + " is not writable");
    }
  }
  fs::remove(probe, ec);
}

}  // namespace

std::optional<PublicSource> parse_public_source(const std::string& name) {
  if (name == "nyc") return PublicSource::nyc;
  return std::nullopt;
}

std::vector<fs::path> fetch_public_data(PublicSource source, const fs::path& out_dir,
                                        const FetchOptions& options) {
  require_writable(out_dir);

  std::span<const RemoteFile> files;
  std::string base;
  switch (source) {
    case PublicSource::nyc:
      files = kNycFiles;
      base = kNycBaseUrl;
      break;
  }
  if (!options.base_url.empty()) base = options.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();

  std::vector<fs::path> partials;
  const auto discard = [&] {
    std::error_code ec;
    for (const auto& p : partials) fs::remove(p, ec);
  };

  nlohmann::json manifest;
  manifest["source"] = "nyc";
  manifest["files"] = nlohmann::json::array();
  try {
    for (const RemoteFile& file : files) {
      const std::string url = base + "/" + file.relative_url;
      const fs::path partial = out_dir / (std::string(file.filename) + ".partial");
      partials.push_back(partial);
      log_info("downloading " + url);
      download(url, partial, options.timeout_seconds);
      if (*file.required_column) check_csv_header(partial, file.required_column);
      manifest["files"].push_back({{"file", file.filename},
                                   {"url", url},
                                   {"retrieved_at", utc_timestamp()},
                                   {"sha256", sha256_hex(partial)}});
    }
  } catch (...) {
    discard();
    throw;
  }

  std::vector<fs::path> written;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    const fs::path dest = out_dir / files[i].filename;
    fs::rename(partials[i], dest);
    written.push_back(dest);
  }
  const fs::path manifest_path = out_dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + manifest_path.string());
  return written;
}

}  // namespace georisk
