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

mod common;

use common::scenarios;

macro_rules! example {
    ($name:ident) => {
        #[test]
        fn $name() {
            if let Err(e) = scenarios::$name() {
                panic!("{e}");
            }
        }
    };
}

example!(birth_k3);
example!(two_births_k4);
example!(simple_growth);
example!(growth_then_merge);
example!(new_community_from_internal_node);
example!(internal_edge_merge);
example!(internal_edge_growth);
example!(node_removal_shrink);
example!(node_removal_split);
example!(node_removal_death);
example!(edge_removal_no_change);
example!(edge_removal_split);
