// Copyright 2026 The KBC Tagger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "kbc/taggernet/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "kbc/errors.h"

namespace kbc::taggernet {

namespace {

class Writer {
 public:
  explicit Writer(std::ostream &out) : out_(out) {}

  void U8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Str(const std::string &s) {
    U64(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream &out_;
};

class Reader {
 public:
  Reader(std::istream &in, std::string source)
      : in_(in), source_(std::move(source)) {}

  std::uint8_t U8() {
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) Fail("truncated file");
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t U32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(U8()) << (8 * i);
    return v;
  }
  std::uint64_t U64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(U8()) << (8 * i);
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Str() {
    std::uint64_t n = U64();
    if (n > (1u << 20)) Fail("implausible string length");
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::uint64_t>(in_.gcount()) != n) Fail("truncated file");
    return s;
  }
  [[noreturn]] void Fail(const std::string &what) {
    throw IoError("checkpoint " + source_ + ": " + what);
  }

 private:
  std::istream &in_;
  std::string source_;
};

}  // namespace

void WriteCheckpoint(std::ostream &out, const Model &model) {
  Writer w(out);
  out.write(kCheckpointMagic, 8);
  w.U32(kCheckpointVersion);

  const TaggerConfig &c = model.config();
  w.U64(c.d_embed);
  w.U64(c.d_hidden);
  w.U64(c.n_layers);
  w.F64(c.input_dropout);
  w.U64(c.seed);
  w.U8(c.freeze_embeddings);
  w.U8(c.peepholes);

  const tagdata::Vocabulary &v = model.vocab();
  w.U8(v.lowercase());
  w.U64(v.size());
  for (const auto &t : v.tokens()) w.Str(t);

  w.U64(model.num_tasks());
  for (const auto &h : model.heads()) {
    w.Str(h.task.name);
    w.U8(h.task.is_main);
    w.U64(h.task.num_tags());
    for (const auto &t : h.task.tagset()) w.Str(t);
  }

  auto params = model.AllParameters();
  w.U64(params.size());
  for (const numcore::Parameter *p : params) {
    w.Str(p->name);
    w.U64(p->value.rank());
    for (std::size_t d : p->value.shape()) w.U64(d);
    for (double x : p->value.data()) w.F64(x);
  }
}

void WriteCheckpoint(const std::filesystem::path &path, const Model &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCheckpoint(out, model);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

Model ReadCheckpoint(std::istream &in, const std::string &source) {
  Reader r(in, source);
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kCheckpointMagic, 8) != 0) {
    r.Fail("not a model checkpoint");
  }
  std::uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    r.Fail("unsupported version " + std::to_string(version));
  }

  TaggerConfig c;
  c.d_embed = r.U64();
  c.d_hidden = r.U64();
  c.n_layers = r.U64();
  c.input_dropout = r.F64();
  c.seed = r.U64();
  c.freeze_embeddings = r.U8() != 0;
  c.peepholes = r.U8() != 0;

  tagdata::Vocabulary vocab(r.U8() != 0);
  const std::uint64_t vocab_size = r.U64();
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    std::string tok = r.Str();
    if (i == 0) {
      if (tok != tagdata::Vocabulary::kUnknownToken) r.Fail("bad unknown token");
      continue;
    }
    if (vocab.Add(tok) != i) r.Fail("duplicate vocabulary entry " + tok);
  }

  std::vector<tagdata::TaskSpec> tasks;
  const std::uint64_t n_tasks = r.U64();
  for (std::uint64_t t = 0; t < n_tasks; ++t) {
    std::string name = r.Str();
    bool is_main = r.U8() != 0;
    std::vector<std::string> tags(r.U64());
    for (auto &tag : tags) tag = r.Str();
    tagdata::TaskSpec spec(name, tags, is_main);
    if (spec.tagset() != tags) r.Fail("tagset of " + name + " not canonical");
    tasks.push_back(std::move(spec));
  }

  Model model(c, std::move(vocab), std::move(tasks));
  auto params = model.AllParameters();
  if (r.U64() != params.size()) r.Fail("tensor count does not match config");
  for (numcore::Parameter *p : params) {
    std::string name = r.Str();
    if (name != p->name) r.Fail("expected tensor " + p->name + ", got " + name);
    std::uint64_t rank = r.U64();
    std::vector<std::size_t> shape(rank);
    for (auto &d : shape) d = r.U64();
    if (shape != p->value.shape()) r.Fail("shape mismatch for " + name);
    for (double &x : p->value.data()) x = r.F64();
    p->ZeroGrad();
  }
  return model;
}

Model ReadCheckpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadCheckpoint(in, path.string());
}

}  // namespace kbc::taggernet
