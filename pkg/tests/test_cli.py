import json
import numpy as np
import pandas as pd
import pytest
from motorprims.cli import EXIT_CODES, OUTPUT_FILES, main
from motorprims.dmp import DemoTrajectory
from motorprims.eda import Oscillation, Submovement


def write_demo(path, trajectory, duration=1.0, n_samples=200):
    demo = DemoTrajectory.from_trajectory(trajectory, np.linspace(0.0, duration, n_samples))
    demo.to_dataframe().to_csv(str(path), index=False)
    return str(path)


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_run_writes_spec_trace_and_metrics(tmp_path):
    assert main(['--quiet', 'run', '--scenario', 'joint-discrete', '--out', str(tmp_path)]) == EXIT_CODES.OK
    for name in (OUTPUT_FILES.SPEC, OUTPUT_FILES.TRACE_CSV, OUTPUT_FILES.METRICS):
        assert (tmp_path / name).exists()
    metrics = read_json(tmp_path / OUTPUT_FILES.METRICS)
    assert metrics['controller'] == 'eda'
    assert metrics['failure'] is None
    df_trace = pd.read_csv(tmp_path / OUTPUT_FILES.TRACE_CSV, comment='#')
    assert len(df_trace) == 3001


def test_run_with_json_trace_and_dt_override(tmp_path):
    code = main(['--quiet', 'run', '--scenario', 'Sequencing', '--controller', 'dmp', '--dt', '2e-3', '--format', 'json', '--out', str(tmp_path)])
    assert code == EXIT_CODES.OK
    trace = read_json(tmp_path / OUTPUT_FILES.TRACE_JSON)
    assert len(trace['rows']) == 4001
    assert 'goal_0' in trace['columns']
    assert read_json(tmp_path / OUTPUT_FILES.SPEC)['dt_s'] == 2e-3


def test_singular_dmp_run_exits_failed(tmp_path, capsys):
    code = main(['--quiet', 'run', '--scenario', 'task-discrete-singular', '--controller', 'dmp', '--out', str(tmp_path)])
    assert code == EXIT_CODES.FAILED
    assert 'FAILED' in capsys.readouterr().out
    failure = read_json(tmp_path / OUTPUT_FILES.METRICS)['failure']
    assert failure is not None
    assert failure['time'] < 1.5


def test_saved_spec_can_be_rerun(tmp_path):
    first, second = tmp_path / 'first', tmp_path / 'second'
    assert main(['--quiet', 'run', '--scenario', 'task-discrete', '--out', str(first)]) == EXIT_CODES.OK
    assert main(['--quiet', 'run', '--spec', str(first / OUTPUT_FILES.SPEC), '--out', str(second)]) == EXIT_CODES.OK
    assert (first / OUTPUT_FILES.METRICS).read_bytes() == (second / OUTPUT_FILES.METRICS).read_bytes()


def test_runs_are_reproducible(tmp_path):
    for name in ('a', 'b'):
        assert main(['--quiet', 'run', '--scenario', 'obstacle-avoid', '--controller', 'dmp', '--out', str(tmp_path / name)]) == EXIT_CODES.OK
    assert (tmp_path / 'a' / OUTPUT_FILES.METRICS).read_bytes() == (tmp_path / 'b' / OUTPUT_FILES.METRICS).read_bytes()
    assert (tmp_path / 'a' / OUTPUT_FILES.TRACE_CSV).read_bytes() == (tmp_path / 'b' / OUTPUT_FILES.TRACE_CSV).read_bytes()


def test_usage_errors_exit_with_one(tmp_path):
    malformed = tmp_path / 'broken.json'
    malformed.write_text('{"scenario_id": "JointDiscrete",')
    assert main(['--quiet', 'run', '--spec', str(malformed), '--out', str(tmp_path)]) == EXIT_CODES.USAGE
    assert main(['--quiet', 'run', '--scenario', 'juggling', '--out', str(tmp_path)]) == EXIT_CODES.USAGE
    assert main(['--quiet', 'run', '--scenario', 'joint-discrete', '--variant', 'unmodulated', '--out', str(tmp_path)]) == EXIT_CODES.USAGE
    with pytest.raises(SystemExit) as exit_info:
        main(['run', '--bogus'])
    assert exit_info.value.code == EXIT_CODES.USAGE
    with pytest.raises(SystemExit) as exit_info:
        main([])
    assert exit_info.value.code == EXIT_CODES.USAGE

# ======================================================================================================================================================================================


def test_learn_writes_weights_and_reports_rms(tmp_path, capsys):
    demo = write_demo(tmp_path / 'demo.csv', Submovement([0.0, 0.5], [1.0, -0.3], 1.0))
    out = tmp_path / 'weights' / 'reach.json'
    assert main(['--quiet', 'learn', '--demo', demo, '--out', str(out)]) == EXIT_CODES.OK
    weights = read_json(out)
    assert weights['N'] == 50
    assert weights['kind'] == 'discrete'
    assert len(weights['weights']) == 2
    printed = capsys.readouterr().out.strip().splitlines()[-1]
    assert printed.startswith('reproduction RMS: ')
    assert float(printed.split(': ')[1]) < 1e-2


def test_learn_rhythmic_demo(tmp_path, capsys):
    demo = write_demo(tmp_path / 'wave.csv', Oscillation([0.5], [0.1], np.pi), duration=2.0, n_samples=100)
    out = tmp_path / 'wave.json'
    assert main(['--quiet', 'learn', '--demo', demo, '--out', str(out), '--kind', 'rhythmic']) == EXIT_CODES.USAGE
    assert not out.exists()
    assert main(['--quiet', 'learn', '--demo', demo, '--out', str(out), '--kind', 'rhythmic', '--period', '2.0']) == EXIT_CODES.OK
    assert read_json(out)['kind'] == 'rhythmic'
    assert float(capsys.readouterr().out.strip().splitlines()[-1].split(': ')[1]) < 1e-2


def test_learn_rejects_bad_demo_columns(tmp_path):
    bad = tmp_path / 'bad.csv'
    pd.DataFrame({'t': [0.0, 0.1, 0.2], 'x': [0.0, 0.5, 1.0]}).to_csv(bad, index=False)
    assert main(['--quiet', 'learn', '--demo', str(bad), '--out', str(tmp_path / 'w.json')]) == EXIT_CODES.USAGE


def test_run_replays_a_weight_file(tmp_path):
    two_dof = write_demo(tmp_path / 'two.csv', Submovement([0.0, 0.0], [1.0, 1.0], 1.0), n_samples=100)
    one_dof = write_demo(tmp_path / 'one.csv', Submovement([0.0], [1.0], 1.0), n_samples=100)
    assert main(['--quiet', 'learn', '--demo', two_dof, '--out', str(tmp_path / 'two.json')]) == EXIT_CODES.OK
    assert main(['--quiet', 'learn', '--demo', one_dof, '--out', str(tmp_path / 'one.json')]) == EXIT_CODES.OK

    replay = ['--quiet', 'run', '--scenario', 'joint-discrete', '--controller', 'dmp', '--out', str(tmp_path / 'run')]
    assert main(replay + ['--weights', str(tmp_path / 'two.json')]) == EXIT_CODES.OK
    assert read_json(tmp_path / 'run' / OUTPUT_FILES.METRICS)['terminal_error'] < 1e-2
    assert main(replay + ['--weights', str(tmp_path / 'one.json')]) == EXIT_CODES.USAGE
    assert main(replay + ['--weights', str(tmp_path / 'missing.json')]) == EXIT_CODES.USAGE

# ======================================================================================================================================================================================


def test_compare_joint_discrete(tmp_path):
    assert main(['--quiet', 'compare', '--scenario', 'joint-discrete', '--out', str(tmp_path)]) == EXIT_CODES.OK
    table = read_json(tmp_path / OUTPUT_FILES.COMPARE)
    assert table['scenario_id'] == 'JointDiscrete'
    assert set(table['runs']) == {'dmp', 'eda'}
    assert table['claims']['failed'] == {'dmp': False, 'eda': False}
    assert table['claims']['lower_rms_tracking_error'] == 'dmp'


def test_compare_reports_a_failed_controller_without_failing(tmp_path):
    assert main(['--quiet', 'compare', '--scenario', 'task-discrete-singular', '--out', str(tmp_path)]) == EXIT_CODES.OK
    claims = read_json(tmp_path / OUTPUT_FILES.COMPARE)['claims']
    assert claims['failed'] == {'dmp': True, 'eda': False}
    assert claims['lower_terminal_error'] == 'eda'
