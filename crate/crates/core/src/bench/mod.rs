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

//! Benchmark generation, cover comparison and timing.

pub mod generator;
pub mod harness;
pub mod lfr;
pub mod nmi;

pub use generator::{
    atomic_modify, benchmark_stream, generate_dynamic_sequence, initial_events, planted_partition, BenchmarkConfig,
};
pub use harness::{time_harness, Algo, BenchGrid, TimingReport, TimingRow};
pub use lfr::{load_lfr, save_lfr, PlantedNetwork};
pub use nmi::{nmi_covers, nmi_covers_in};
