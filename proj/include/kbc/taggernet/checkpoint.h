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
#ifndef KBC_TAGGERNET_CHECKPOINT_H_
#define KBC_TAGGERNET_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kbc/taggernet/model.h"

namespace kbc::taggernet {

// Binary model container, little-endian throughout:
//
//   magic "KBCMODEL" | u32 version
//   config:  u64 d_embed, u64 d_hidden, u64 n_layers, f64 input_dropout,
//            u64 seed, u8 freeze_embeddings, u8 peepholes
//   vocab:   u8 lowercase, u64 count, count x string
//   tasks:   u64 count, count x (string name, u8 is_main, u64 ntags,
//            ntags x string)
//   tensors: u64 count, count x (string name, u64 rank, rank x u64 dim,
//            prod(dims) x f64)
//
// Strings are u64 length + bytes; doubles are stored as their IEEE-754 bit
// patterns, so a write/read cycle reproduces every parameter bit for bit.
inline constexpr char kCheckpointMagic[] = "KBCMODEL";
inline constexpr std::uint32_t kCheckpointVersion = 1;

void WriteCheckpoint(std::ostream &out, const Model &model);
void WriteCheckpoint(const std::filesystem::path &path, const Model &model);

// Throws IoError on truncated or foreign files and on version mismatch.
Model ReadCheckpoint(std::istream &in, const std::string &source = "<stream>");
Model ReadCheckpoint(const std::filesystem::path &path);

}  // namespace kbc::taggernet

#endif  // KBC_TAGGERNET_CHECKPOINT_H_
