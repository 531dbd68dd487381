"""Session engine: input events drive the keyboard, panels, and log."""

import pytest

from mindtype.engine import EngineError, replay
from mindtype.keyboard import BACKSPACE, MORE, Section
from mindtype.resources import build_engine


def blink_pair(engine, t):
    """Two blinks 150 ms apart: the standard selection gesture."""
    events = engine.apply("expression", {"name": "Blink"}, t)
    events += engine.apply("expression", {"name": "Blink"}, t + 150)
    return events


def type_char(engine, ch, t):
    """Navigate to ``ch`` with planned commands, then double-blink."""
    from mindtype.simulate import plan_actions

    plan = plan_actions(engine.state, ch)
    for action in plan:
        if action == "Select":
            t += 300
            blink_pair(engine, t)
            t += 300
        else:
            t += 300
            engine.apply("command", {"name": action}, t)
    return t


class TestCommands:
    def test_command_moves_focus_and_logs_layout(self, tiny_engine):
        events = tiny_engine.apply("command", {"name": "Pull"}, 100)
        assert [ev.kind for ev in events] == ["command", "layout_change"]
        assert tiny_engine.state.focus.kind == "ring"
        assert events[1].t == 100  # outputs share the input timestamp
        assert events[1].payload["focus"]["ring"] == "inner"

    def test_unknown_command_rejected(self, tiny_engine):
        with pytest.raises(EngineError):
            tiny_engine.apply("command", {"name": "Sideways"}, 0)
        with pytest.raises(EngineError):
            tiny_engine.apply("command", {}, 0)

    def test_unknown_kind_rejected(self, tiny_engine):
        with pytest.raises(EngineError):
            tiny_engine.apply("telepathy", {"name": "Left"}, 0)


class TestSelection:
    def test_double_blink_commits_focused_key(self, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        events = blink_pair(tiny_engine, 500)
        kinds = [ev.kind for ev in events]
        assert kinds == [
            "expression",
            "expression",
            "commit",
            "prediction_update",
            "metric_sample",
        ]
        assert tiny_engine.state.text == "e"  # rank-0 letter of the start page
        commit = events[2]
        assert commit.payload == {"action": "append", "char": "e", "text": "e"}

    def test_layout_follows_committed_letter(self, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        blink_pair(tiny_engine, 500)
        rows = tiny_engine.snapshot()["layout"]["rows"]
        assert rows[0] == ["r", "d", "s", "n"]
        assert rows[1] == ["a", "t", BACKSPACE, MORE]

    def test_single_blink_does_nothing(self, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        events = tiny_engine.apply("expression", {"name": "Blink"}, 400)
        assert [ev.kind for ev in events] == ["expression"]
        assert tiny_engine.state.text == ""

    def test_slow_blinks_do_not_pair(self, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        tiny_engine.apply("expression", {"name": "Blink"}, 400)
        events = tiny_engine.apply("expression", {"name": "Blink"}, 2000)
        assert [ev.kind for ev in events] == ["expression"]
        assert tiny_engine.state.text == ""

    def test_space_commit_records_word(self, tiny_engine):
        before = tiny_engine.learner.accepted_count
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        blink_pair(tiny_engine, 500)  # "e"
        blink_pair(tiny_engine, 1500)  # center: space commits the word
        assert tiny_engine.state.text == "e "
        assert tiny_engine.learner.accepted_count == before + 1

    def test_more_only_changes_layout(self, tiny_engine):
        # navigate to the More key: outer ring slot 3
        for name in ("Pull", "Pull", "Left"):
            tiny_engine.apply("command", {"name": name}, 100)
        events = blink_pair(tiny_engine, 800)
        assert [ev.kind for ev in events] == [
            "expression",
            "expression",
            "layout_change",
        ]
        assert tiny_engine.snapshot()["layout"]["page"] == 1
        assert tiny_engine.state.text == ""


class TestPanels:
    def test_look_left_shows_predictions(self, tiny_engine):
        events = tiny_engine.apply("motor_imagery", {"kind": "LookLeft"}, 50)
        assert tiny_engine.state.section is Section.PREDICTIONS
        assert events[1].payload["section"] == "predictions"

    def test_panel_commit_inserts_word(self, tiny_engine):
        tiny_engine.apply("motor_imagery", {"kind": "LookLeft"}, 50)
        predicted = tiny_engine.predictions[0]
        events = blink_pair(tiny_engine, 400)
        commit = next(ev for ev in events if ev.kind == "commit")
        assert commit.payload["word"] == predicted
        assert tiny_engine.state.text == predicted + " "
        # accepting a word drops the user back on the keyboard
        assert tiny_engine.state.section is Section.KEYBOARD

    def test_panel_commit_replaces_fragment(self, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        blink_pair(tiny_engine, 500)  # "e"
        tiny_engine.apply("motor_imagery", {"kind": "LookLeft"}, 1500)
        assert tiny_engine.predictions, "autocomplete should offer e-words"
        word = tiny_engine.predictions[0]
        blink_pair(tiny_engine, 2000)
        assert tiny_engine.state.text == word + " "
        assert word.startswith("e")

    def test_verb_panel_commit(self, tiny_engine):
        tiny_engine.apply("motor_imagery", {"kind": "LookRight"}, 50)
        assert tiny_engine.state.section is Section.HELPING_VERBS
        tiny_engine.apply("command", {"name": "Right"}, 300)
        verb = tiny_engine.helping_verb_list[1]
        blink_pair(tiny_engine, 700)
        assert tiny_engine.state.text == verb + " "

    def test_panel_selection_records_word_for_learning(self, tiny_engine):
        before = tiny_engine.learner.accepted_count
        tiny_engine.apply("motor_imagery", {"kind": "LookLeft"}, 50)
        blink_pair(tiny_engine, 400)
        assert tiny_engine.learner.accepted_count == before + 1


class TestEmotion:
    HAPPY = {
        "engagement": 1.0, "excitement": 1.0, "stress": 0.0,
        "relaxation": 1.0, "interest": 1.0, "focus": 1.0,
    }
    SAD = {
        "engagement": 0.0, "excitement": 0.0, "stress": 1.0,
        "relaxation": 0.0, "interest": 0.0, "focus": 0.0,
    }

    def test_default_mood_is_calm(self, tiny_engine):
        assert tiny_engine.snapshot()["emotion"] == "calm"

    def test_update_reclassifies_and_refreshes(self, tiny_engine):
        events = tiny_engine.apply("emotion_update", {"metrics": self.HAPPY}, 90)
        assert tiny_engine.emotion.label == "happiness"
        assert [ev.kind for ev in events] == ["emotion_update", "prediction_update"]
        assert events[1].payload["emotion"] == "happiness"

    def test_emotion_changes_prediction_order(self, tiny_engine):
        tiny_engine.apply("emotion_update", {"metrics": self.HAPPY}, 90)
        happy_list = tiny_engine.predictions
        tiny_engine.apply("emotion_update", {"metrics": self.SAD}, 200)
        sad_list = tiny_engine.predictions
        assert happy_list != sad_list

    def test_bad_metrics_rejected(self, tiny_engine):
        with pytest.raises(EngineError):
            tiny_engine.apply("emotion_update", {"metrics": {"stress": 2.0}}, 0)
        with pytest.raises(EngineError):
            tiny_engine.apply("emotion_update", {}, 0)


class TestSnapshotAndReplay:
    def test_snapshot_shape(self, tiny_engine):
        snap = tiny_engine.snapshot()
        assert snap["type"] == "snapshot"
        assert snap["seq"] == 0
        assert snap["text"] == ""
        assert len(snap["layout"]["rows"]) == 2
        assert snap["metrics"] == {"wpm": 0.0, "cpm": 0.0}
        assert isinstance(snap["predictions"], list)

    def test_snapshot_seq_tracks_log(self, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 10)
        assert tiny_engine.snapshot()["seq"] == len(tiny_engine.log.events) == 2

    def test_replay_reproduces_text(self, tiny_config, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        blink_pair(tiny_engine, 500)
        blink_pair(tiny_engine, 1500)
        assert tiny_engine.state.text == "e "

        fresh = build_engine(tiny_config)
        state, relog = replay(tiny_engine.log, fresh)
        assert state.text == "e "
        assert [ev.to_json() for ev in relog.events] == [
            ev.to_json() for ev in tiny_engine.log.events
        ]

    def test_replay_requires_fresh_engine(self, tiny_config, tiny_engine):
        tiny_engine.apply("command", {"name": "Pull"}, 100)
        used = build_engine(tiny_config)
        used.apply("command", {"name": "Pull"}, 5)
        from mindtype.engine import ReplayError

        with pytest.raises(ReplayError, match="fresh"):
            replay(tiny_engine.log, used)

    def test_replay_requires_matching_config(self, tiny_config, tiny_engine):
        from dataclasses import replace

        from mindtype.engine import ReplayError

        tiny_engine.apply("command", {"name": "Pull"}, 100)
        other = build_engine(replace(tiny_config, alpha=0.9))
        with pytest.raises(ReplayError, match="hash"):
            replay(tiny_engine.log, other)


def test_full_word_session(tiny_config):
    engine = build_engine(tiny_config)
    t = 1000
    for ch in "the day":
        target = " " if ch == " " else ch
        t = type_char(engine, target, t) + 500
    assert engine.state.text == "the day"
    kinds = {ev.kind for ev in engine.log.events}
    assert {"command", "expression", "commit", "prediction_update"} <= kinds
