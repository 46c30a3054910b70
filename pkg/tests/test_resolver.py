import pytest
from hypothesis import given, strategies as st

from tca.model import (
    DialogDate,
    HourSpec,
    Month,
    QualifiedField,
    SLOT_NAMES,
    TemporalRecord,
    TimePoint,
    Weekday,
    parse_label,
)
from tca.resolver import (
    CONTEXT_WINDOW,
    CONTEXTUAL,
    DialogContext,
    FORCED,
    InconsistentTimePointError,
    RULE_CARRY_FORWARD,
    RULE_END_COMPLETION,
    RULE_MONTH_NEAREST_FUTURE,
    RULE_TIME_OF_DAY_CONTEXT,
    RULE_TIME_OF_DAY_DEFAULT,
    RULE_WEEKDAY_FROM_DATE,
    Suggestion,
    carry_forward_date,
    complete_end_point,
    complete_time_point,
    default_time_of_day_table,
    infer_time_of_day,
    load_time_of_day_table,
    nearest_future_month,
    resolve_record,
    resolve_year,
)

MARCH_1993 = DialogDate(1993, Month.MARCH, 5)
AUGUST_1996 = DialogDate(1996, Month.AUGUST, 19)


def ctx(dialog_date=MARCH_1993, *priors):
    return DialogContext.of(dialog_date, priors)


def rec(label, start=None, end=None):
    return TemporalRecord(parse_label(label), start or TimePoint(), end or TimePoint())


def tagged(suggestions):
    return [(s.field_path, s.proposed_value, s.rule, s.confidence) for s in suggestions]


class TestResolveYear:
    def test_same_or_later_month_keeps_dialog_year(self):
        assert resolve_year(MARCH_1993, Month.MARCH) == 1993
        assert resolve_year(MARCH_1993, Month.APRIL) == 1993
        assert resolve_year(MARCH_1993, Month.DECEMBER) == 1993

    def test_earlier_month_means_next_year(self):
        assert resolve_year(MARCH_1993, Month.JANUARY) == 1994
        assert resolve_year(MARCH_1993, Month.FEBRUARY) == 1994

    def test_january_dialog_never_rolls(self):
        jan = DialogDate(1993, Month.JANUARY, 15)
        assert all(resolve_year(jan, m) == 1993 for m in Month)


class TestNearestFutureMonth:
    def test_day_still_ahead_stays_in_dialog_month(self):
        assert nearest_future_month(AUGUST_1996, 25) == Month.AUGUST
        assert nearest_future_month(AUGUST_1996, 19) == Month.AUGUST
        assert nearest_future_month(AUGUST_1996, 31) == Month.AUGUST

    def test_day_already_past_moves_to_next_month(self):
        assert nearest_future_month(AUGUST_1996, 5) == Month.SEPTEMBER
        assert nearest_future_month(MARCH_1993, 4) == Month.APRIL

    def test_skips_months_too_short_for_the_day(self):
        d = DialogDate(1996, Month.SEPTEMBER, 15)
        assert nearest_future_month(d, 31) == Month.OCTOBER
        assert nearest_future_month(d, 30) == Month.SEPTEMBER

    def test_leap_day(self):
        assert nearest_future_month(DialogDate(1996, Month.FEBRUARY, 1), 29) == Month.FEBRUARY
        # 1993 is not a leap year and neither is 1994.
        assert nearest_future_month(DialogDate(1993, Month.FEBRUARY, 1), 29) == Month.MARCH

    def test_weekday_constraint(self):
        assert nearest_future_month(MARCH_1993, 8, Weekday.MONDAY) == Month.MARCH
        # The next 8th on a Tuesday after 1993-03-05 is in June.
        assert nearest_future_month(MARCH_1993, 8, Weekday.TUESDAY) == Month.JUNE

    def test_no_match_within_a_year_gives_none(self):
        # No 31st falls on a Thursday between March 1993 and February 1994.
        assert nearest_future_month(MARCH_1993, 31, Weekday.THURSDAY) is None


class TestCompleteTimePoint:
    def test_weekday_from_full_date(self):
        p = TimePoint.of(month="march", date="8")
        done, suggestions = complete_time_point(p, ctx())
        assert done.weekday.value == "monday"
        assert tagged(suggestions) == [("weekday", "monday", RULE_WEEKDAY_FROM_DATE, FORCED)]

    def test_month_then_weekday_from_bare_day(self):
        p = TimePoint.of(date="8")
        done, suggestions = complete_time_point(p, ctx())
        assert done.month.value == "march"
        assert done.weekday.value == "monday"
        assert tagged(suggestions) == [
            ("month", "march", RULE_MONTH_NEAREST_FUTURE, FORCED),
            ("weekday", "monday", RULE_WEEKDAY_FROM_DATE, FORCED),
        ]

    def test_stated_weekday_steers_month_choice(self):
        p = TimePoint.of(weekday="tuesday", date="8")
        done, suggestions = complete_time_point(p, ctx())
        assert done.month.value == "june"
        assert done.weekday.value == "tuesday"
        assert tagged(suggestions) == [("month", "june", RULE_MONTH_NEAREST_FUTURE, FORCED)]

    def test_contradictory_weekday_raises(self):
        p = TimePoint.of(weekday="tuesday", month="march", date="8")
        with pytest.raises(InconsistentTimePointError):
            complete_time_point(p, ctx())

    def test_consistent_full_point_is_untouched(self):
        p = TimePoint.of(weekday="friday", month="march", date="5",
                         hour="9:00", time_of_day="morning")
        done, suggestions = complete_time_point(p, ctx())
        assert done == p
        assert suggestions == []

    def test_hedged_date_blocks_all_completion(self):
        p = TimePoint.of(month="august", date=("after", "25"))
        done, suggestions = complete_time_point(p, ctx(AUGUST_1996))
        assert done == p
        assert suggestions == []

    def test_hedged_month_blocks_too(self):
        p = TimePoint.of(month=("before", "august"), date="25")
        done, suggestions = complete_time_point(p, ctx(AUGUST_1996))
        assert done == p
        assert suggestions == []

    def test_early_late_do_not_hedge(self):
        p = TimePoint.of(month="march", date=("late", "5"))
        done, _ = complete_time_point(p, ctx())
        assert done.weekday.value == "friday"

    def test_unreal_date_is_left_for_the_validator(self):
        p = TimePoint.of(month="february", date="30")
        done, suggestions = complete_time_point(p, ctx())
        assert done == p
        assert suggestions == []

    def test_no_date_means_no_inference(self):
        p = TimePoint.of(weekday="friday", hour="2:00")
        done, suggestions = complete_time_point(p, ctx())
        assert done == p
        assert suggestions == []

    def test_completion_is_idempotent(self):
        p = TimePoint.of(date="8")
        once, _ = complete_time_point(p, ctx())
        twice, again = complete_time_point(once, ctx())
        assert twice == once
        assert again == []


class TestCompleteEndPoint:
    def test_all_null_end_takes_the_date_but_not_the_clock(self):
        start = TimePoint.of(weekday="thursday", month="august", date="22",
                             hour="9", time_of_day="morning")
        end = complete_end_point(start, TimePoint())
        assert end == TimePoint.of(weekday="thursday", month="august", date="22")

    def test_all_day_is_kept_on_both_sides(self):
        start = TimePoint.of(weekday="friday", month="march", date="5",
                             time_of_day="all-day")
        end = complete_end_point(start, TimePoint())
        assert end == start

    def test_partial_end_only_gains_missing_date_fields(self):
        start = TimePoint.of(weekday="monday", month="march", date="8")
        end = TimePoint.of(weekday="friday", date="12")
        done = complete_end_point(start, end)
        assert done == TimePoint.of(weekday="friday", month="march", date="12")

    def test_null_start_fills_nothing(self):
        end = TimePoint.of(hour="2:00")
        assert complete_end_point(TimePoint(), end) == end

    def test_hedged_start_date_switches_completion_off(self):
        start = TimePoint.of(month="august", date=("after", "25"))
        assert complete_end_point(start, TimePoint()) == TimePoint()

    def test_hedged_end_date_switches_completion_off(self):
        start = TimePoint.of(month="august", date="20")
        end = TimePoint.of(date=("before", "25"))
        assert complete_end_point(start, end) == end

    def test_end_clock_fields_never_copied(self):
        start = TimePoint.of(month="march", date="5", hour="12:00",
                             time_of_day="afternoon")
        end = complete_end_point(start, TimePoint())
        assert end.hour.is_null and end.time_of_day.is_null

    def test_qualified_end_values_are_not_overwritten(self):
        start = TimePoint.of(weekday="monday", month="march", date="8")
        end = TimePoint.of(weekday=("late", "friday"))
        done = complete_end_point(start, end)
        assert done.weekday == QualifiedField(("late",), "friday")
        assert done.month.value == "march"


class TestTimeOfDayTable:
    def test_default_table_values(self):
        table = default_time_of_day_table()
        for hour in range(1, 7):
            assert table[hour] == "afternoon"
        for hour in range(7, 12):
            assert table[hour] is None
        assert table[12] == "afternoon"

    def test_inference_without_context(self):
        quiet = ctx()
        assert infer_time_of_day(HourSpec(2), quiet) == "afternoon"
        assert infer_time_of_day(HourSpec(12), quiet) == "afternoon"
        assert infer_time_of_day(HourSpec(8), quiet) is None

    def test_minutes_are_ignored(self):
        assert infer_time_of_day(HourSpec(2, 30), ctx()) == "afternoon"
        assert infer_time_of_day(HourSpec(8, 15), ctx()) is None

    def test_custom_table(self):
        table = load_time_of_day_table('{"7-9": "morning", "10": null}')
        assert table[7] == table[9] == "morning"
        assert table[10] is None
        assert table[1] is None
        assert infer_time_of_day(HourSpec(8), ctx(), table) == "morning"

    @pytest.mark.parametrize("text", [
        '[1, 2]',
        '{"1": "brunch"}',
        '{"0-3": null}',
        '{"5-13": "morning"}',
        '{"9-7": null}',
        '{"x": null}',
    ])
    def test_bad_tables_are_rejected(self, text):
        with pytest.raises(ValueError):
            load_time_of_day_table(text)


class TestContextOverride:
    def window_ctx(self, *tods, gap=0):
        """Context whose oldest prior record names the given windows, padded
        with null records after it."""
        dated = rec("1",
                    TimePoint.of(time_of_day=tods[0] if tods else None),
                    TimePoint.of(time_of_day=tods[1] if len(tods) > 1 else None))
        padding = [rec(str(i + 2)) for i in range(gap)]
        return ctx(MARCH_1993, dated, *padding)

    def test_recent_window_wins_when_hour_fits(self):
        assert infer_time_of_day(HourSpec(8), self.window_ctx("morning")) == "morning"

    def test_table_wins_when_hour_is_outside_the_window(self):
        assert infer_time_of_day(HourSpec(3), self.window_ctx("morning")) == "afternoon"

    def test_ambiguous_mention_falls_back_to_table(self):
        two = self.window_ctx("morning", "evening")
        assert infer_time_of_day(HourSpec(8), two) is None
        assert infer_time_of_day(HourSpec(2), two) == "afternoon"

    def test_matching_windows_on_both_points_are_unambiguous(self):
        assert infer_time_of_day(HourSpec(8), self.window_ctx("morning", "morning")) == "morning"

    def test_window_expires_beyond_the_lookback(self):
        near = self.window_ctx("morning", gap=CONTEXT_WINDOW - 1)
        far = self.window_ctx("morning", gap=CONTEXT_WINDOW)
        assert infer_time_of_day(HourSpec(8), near) == "morning"
        assert infer_time_of_day(HourSpec(8), far) is None

    def test_most_recent_mention_wins(self):
        older = rec("1", TimePoint.of(time_of_day="evening"))
        newer = rec("2", TimePoint.of(time_of_day="morning"))
        assert infer_time_of_day(HourSpec(8), ctx(MARCH_1993, older, newer)) == "morning"

    def test_meals_and_all_day_are_not_windows(self):
        older = rec("1", TimePoint.of(time_of_day="morning"))
        newer = rec("2", TimePoint.of(time_of_day="lunch"),
                    TimePoint.of(time_of_day="all-day"))
        assert infer_time_of_day(HourSpec(8), ctx(MARCH_1993, older, newer)) == "morning"

    def test_hedged_window_mention_is_ignored(self):
        older = rec("1", TimePoint.of(time_of_day="morning"))
        newer = rec("2", TimePoint.of(time_of_day=("after", "evening")))
        assert infer_time_of_day(HourSpec(8), ctx(MARCH_1993, older, newer)) == "morning"

    def test_evening_window(self):
        evening = self.window_ctx("evening")
        assert infer_time_of_day(HourSpec(6), evening) == "evening"
        assert infer_time_of_day(HourSpec(9), evening) == "evening"
        assert infer_time_of_day(HourSpec(12), evening) == "afternoon"


DATED = rec("9",
            TimePoint.of(weekday="friday", month="march", date="5",
                         hour="12:00", time_of_day="afternoon"),
            TimePoint.of(weekday="friday", month="march", date="5"))


class TestCarryForward:
    def test_clock_only_point_picks_up_the_recent_date(self):
        p = TimePoint.of(hour="2:00")
        got = carry_forward_date(ctx(MARCH_1993, DATED), p)
        assert tagged(got) == [
            ("weekday", "friday", RULE_CARRY_FORWARD, CONTEXTUAL),
            ("month", "march", RULE_CARRY_FORWARD, CONTEXTUAL),
            ("date", "5", RULE_CARRY_FORWARD, CONTEXTUAL),
        ]

    def test_time_of_day_counts_as_a_clock(self):
        p = TimePoint.of(time_of_day="afternoon")
        assert len(carry_forward_date(ctx(MARCH_1993, DATED), p)) == 3

    def test_no_clock_no_carry(self):
        assert carry_forward_date(ctx(MARCH_1993, DATED), TimePoint()) == []

    def test_existing_date_fields_block_the_carry(self):
        p = TimePoint.of(month="april", hour="2:00")
        assert carry_forward_date(ctx(MARCH_1993, DATED), p) == []
        p = TimePoint.of(date="9", hour="2:00")
        assert carry_forward_date(ctx(MARCH_1993, DATED), p) == []

    def test_stated_weekday_is_kept(self):
        p = TimePoint.of(weekday="monday", hour="2:00")
        got = carry_forward_date(ctx(MARCH_1993, DATED), p)
        assert [s.field_path for s in got] == ["month", "date"]

    def test_undated_records_are_scanned_past(self):
        got = carry_forward_date(ctx(MARCH_1993, DATED, rec("10"), rec("11")),
                                 TimePoint.of(hour="2:00"))
        assert [s.proposed_value for s in got] == ["friday", "march", "5"]

    def test_end_point_of_a_prior_record_can_supply_the_date(self):
        prior = rec("3", TimePoint(), TimePoint.of(month="march", date="12"))
        got = carry_forward_date(ctx(MARCH_1993, prior), TimePoint.of(hour="2:00"))
        assert tagged(got) == [
            ("month", "march", RULE_CARRY_FORWARD, CONTEXTUAL),
            ("date", "12", RULE_CARRY_FORWARD, CONTEXTUAL),
        ]

    def test_lookback_limit(self):
        padding = [rec(str(i + 20)) for i in range(CONTEXT_WINDOW)]
        got = carry_forward_date(ctx(MARCH_1993, DATED, *padding),
                                 TimePoint.of(hour="2:00"))
        assert got == []

    def test_hedged_prior_dates_are_not_carried(self):
        prior = rec("3", TimePoint.of(month="august", date=("after", "25")))
        assert carry_forward_date(ctx(MARCH_1993, prior),
                                  TimePoint.of(hour="2:00")) == []


class TestResolveRecord:
    def test_forced_rules_fill_start_and_end(self):
        r = rec("27",
                TimePoint.of(month="march", date="5", hour="12:00",
                             time_of_day="afternoon"))
        resolved, suggestions = resolve_record(r, ctx())
        assert resolved.start.weekday.value == "friday"
        assert resolved.end == TimePoint.of(weekday="friday", month="march", date="5")
        assert tagged(suggestions) == [
            ("SWeekDay", "friday", RULE_WEEKDAY_FROM_DATE, FORCED),
            ("EWeekDay", "friday", RULE_END_COMPLETION, FORCED),
            ("EMonth", "march", RULE_END_COMPLETION, FORCED),
            ("EDate", "5", RULE_END_COMPLETION, FORCED),
        ]

    def test_field_paths_use_slot_names(self):
        r = rec("1", TimePoint.of(date="8", hour="2:00"))
        _, suggestions = resolve_record(r, ctx(MARCH_1993, DATED))
        assert suggestions
        assert {s.field_path for s in suggestions} <= set(SLOT_NAMES)

    def test_time_of_day_reading_is_only_suggested(self):
        r = rec("32", TimePoint.of(weekday="friday", month="march", date="5",
                                   hour="2:00"))
        resolved, suggestions = resolve_record(r, ctx())
        assert resolved.start.time_of_day.is_null
        tods = [s for s in suggestions if s.field_path == "STimeOfDay"]
        assert tagged(tods) == [("STimeOfDay", "afternoon",
                                 RULE_TIME_OF_DAY_DEFAULT, CONTEXTUAL)]

    def test_context_rule_is_named_when_a_window_decides(self):
        prior = rec("1", TimePoint.of(time_of_day="morning"))
        r = rec("2", TimePoint.of(weekday="friday", month="march", date="5",
                                  hour="9"))
        _, suggestions = resolve_record(r, ctx(MARCH_1993, prior))
        tods = [s for s in suggestions if s.field_path == "STimeOfDay"]
        assert tagged(tods) == [("STimeOfDay", "morning",
                                 RULE_TIME_OF_DAY_CONTEXT, CONTEXTUAL)]

    def test_end_hour_gets_a_reading_too(self):
        r = rec("28", TimePoint.of(month="march", date="5", hour="12:00",
                                   time_of_day="afternoon"),
                TimePoint.of(hour="2:00"))
        resolved, suggestions = resolve_record(r, ctx())
        assert resolved.end.hour.value == "2:00"
        tods = [s for s in suggestions if s.field_path == "ETimeOfDay"]
        assert tagged(tods) == [("ETimeOfDay", "afternoon",
                                 RULE_TIME_OF_DAY_DEFAULT, CONTEXTUAL)]

    def test_inconsistent_start_is_returned_untouched(self):
        r = rec("5", TimePoint.of(weekday="tuesday", month="march", date="8"))
        resolved, suggestions = resolve_record(r, ctx())
        assert resolved.start == r.start
        assert all(not s.field_path.startswith("SWeekDay") for s in suggestions)

    def test_carry_forward_applies_to_one_point_only(self):
        r = rec("7", TimePoint.of(hour="2:00"), TimePoint.of(hour="4:00"))
        _, suggestions = resolve_record(r, ctx(MARCH_1993, DATED))
        carried = [s for s in suggestions if s.rule == RULE_CARRY_FORWARD]
        assert carried
        assert {s.field_path for s in carried} == {"SWeekDay", "SMonth", "SDate"}

    def test_resolution_is_idempotent_on_forced_rules(self):
        r = rec("27", TimePoint.of(month="march", date="5", hour="12:00",
                                   time_of_day="afternoon"))
        resolved, _ = resolve_record(r, ctx())
        again, suggestions = resolve_record(resolved, ctx())
        assert again == resolved
        assert [s for s in suggestions if s.confidence == FORCED] == []

    def test_suggestion_json_shape(self):
        s = Suggestion("SWeekDay", "friday", RULE_WEEKDAY_FROM_DATE, FORCED)
        assert s.to_json() == {"fieldPath": "SWeekDay", "proposedValue": "friday",
                               "rule": RULE_WEEKDAY_FROM_DATE, "confidence": FORCED}


day_fields = st.one_of(
    st.just(QualifiedField()),
    st.builds(lambda v: QualifiedField((), v),
              st.sampled_from([str(n) for n in range(1, 32)])),
    st.builds(lambda q, v: QualifiedField((q,), v),
              st.sampled_from(["before", "after", "early", "late"]),
              st.sampled_from(["5", "25", "31"])),
)

month_fields = st.one_of(
    st.just(QualifiedField()),
    st.builds(lambda v: QualifiedField((), v),
              st.sampled_from(["january", "march", "august", "december"])),
)

weekday_fields = st.one_of(
    st.just(QualifiedField()),
    st.builds(lambda v: QualifiedField((), v),
              st.sampled_from(["sunday", "monday", "friday"])),
)

start_points = st.builds(
    lambda w, m, d: TimePoint(w, m, d),
    weekday_fields, month_fields, day_fields)


class TestResolutionProperties:
    @given(start_points)
    def test_stated_fields_are_never_changed(self, p):
        try:
            done, _ = complete_time_point(p, ctx())
        except InconsistentTimePointError:
            return
        for attr in ("weekday", "month", "date"):
            original = getattr(p, attr)
            if not original.is_null or original.qualifiers:
                assert getattr(done, attr) == original

    @given(start_points)
    def test_completion_converges_in_one_step(self, p):
        try:
            once, _ = complete_time_point(p, ctx())
            twice, sugg = complete_time_point(once, ctx())
        except InconsistentTimePointError:
            return
        assert twice == once
        assert sugg == []

    @given(start_points, start_points)
    def test_end_completion_never_unfills(self, start, end):
        done = complete_end_point(start, end)
        for attr in ("weekday", "month", "date", "hour", "time_of_day"):
            if not getattr(end, attr).is_null:
                assert getattr(done, attr) == getattr(end, attr)
