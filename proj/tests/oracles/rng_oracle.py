# Copyright 2026 The Slotforge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values frozen into rng_test.cc and adapter tests."""

MASK = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & MASK
    return h


def derive_seed(master: int, call_id: str, turn: int) -> int:
    return fnv1a64(f"{call_id}|{turn}|{master}".encode())


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform_int(self, lo, hi):
        rng = (hi - lo + 1) & MASK
        threshold = ((1 << 64) - rng) % rng
        while True:
            x = self.next()
            if x >= threshold:
                return lo + x % rng

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.uniform_int(0, i)
            items[i], items[j] = items[j], items[i]


if __name__ == "__main__":
    for args in [(42, "c1", 0), (42, "c1", 1), (0, "", 0), (7, "call-001", 12)]:
        print("DeriveSeed", args, derive_seed(*args))
    r = SplitMix64(0)
    print("SplitMix64(0)", [r.next() for _ in range(3)])
    r = SplitMix64(12345)
    print("UniformInt(12345, 1..6) x8", [r.uniform_int(1, 6) for _ in range(8)])
    r = SplitMix64(99)
    items = list(range(10))
    r.shuffle(items)
    print("Shuffle(99, 0..9)", items)
