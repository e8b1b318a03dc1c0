# Copyright 2026 The Limsup Games Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import json
import os
import pathlib

import pytest

import limsup_games as lg

CONFIGS = pathlib.Path(
    os.environ.get("LIMSUP_CONFIGS",
                   pathlib.Path(__file__).resolve().parents[2] / "configs"))

LETTER = lg.Automaton.letter_value(2)


def test_dyadic_arithmetic():
    a = lg.Dyadic("3/2^2")
    assert str(a + lg.Dyadic(1, 2)) == "1/2^0"
    assert a.numerator == 3 and a.exponent == 2
    assert float(-a) == -0.75
    assert lg.Dyadic("2/2^2") == lg.Dyadic(1, 1)
    assert lg.Dyadic(0) < a


def test_eval_limsup():
    assert str(lg.eval_limsup(LETTER, "stem=1,1;cycle=0")) == "0/2^0"
    assert str(LETTER.limsup("stem=;cycle=0,0,1")) == "1/2^0"
    with pytest.raises(ValueError):
        lg.eval_limsup(LETTER, "stem=;cycle=7")


def test_automaton_json_round_trip():
    text = (CONFIGS / "letter.json").read_text()
    u = lg.Automaton.from_json(text)
    assert lg.Automaton.from_json(u.to_json()).to_json() == u.to_json()
    assert str(u.value([0, 1])) == "1/2^0"


def test_construct_u_matches_limsup():
    u = lg.construct_u(LETTER)
    for stem_len, cyc_len in [(0, 1), (1, 2), (2, 2)]:
        for stem in itertools.product([0, 1], repeat=stem_len):
            for cycle in itertools.product([0, 1], repeat=cyc_len):
                branch = "stem={};cycle={}".format(
                    ",".join(map(str, stem)), ",".join(map(str, cycle)))
                assert u.limsup(branch) == LETTER.limsup(branch)


def test_algebra_sum():
    u = lg.algebra(LETTER, LETTER, "sum")
    assert u.limsup("stem=;cycle=0,1") == lg.Dyadic(2)
    assert u.limsup("stem=1;cycle=0") == lg.Dyadic(0)
    with pytest.raises(ValueError):
        lg.algebra(LETTER, LETTER, "product")


def test_construct_config():
    cfg = json.loads((CONFIGS / "construct_letter.json").read_text())
    report = lg.construct(cfg, base_dir=str(CONFIGS))
    assert report["all_equal"]
    assert len(report["branches"]) == 30
    assert report["automaton"] is not None


def test_play_and_verify():
    cfg = json.loads((CONFIGS / "play_from_u.json").read_text())
    r = lg.play(cfg, base_dir=str(CONFIGS))
    assert r["verdict"]["outcome"] == "WinII"
    assert r["rounds"]

    meager = json.loads((CONFIGS / "meager_dense.json").read_text())
    assert lg.play(meager)["verdict"]["outcome"] == "WinI"
    with pytest.raises(ValueError):
        lg.verify(meager)

    cfg = json.loads((CONFIGS / "verify_from_u.json").read_text())
    assert lg.verify(cfg, base_dir=str(CONFIGS))["verdict"]["exact"]


def test_bad_config():
    with pytest.raises(ValueError):
        lg.play({"game": "gamma", "bogus": 1})


def test_suite_subset():
    report = lg.run_suite(filter="c1")
    assert len(report["criteria"]) == 1
    assert report["criteria"][0]["passed"]
    tampered = lg.run_suite(filter="c1", tamper="c1_from_u_wins_gamma")
    assert not tampered["criteria"][0]["passed"]
    assert len(lg.criterion_names()) == 8
