import argparse
import json
import logging as log
import os
import sys
from motorprims.dmp.CanonicalSystem import CanonicalSystem, DMP_KINDS, DMP_DEFAULTS
from motorprims.dmp.DemoTrajectory import DemoTrajectory
from motorprims.dmp.DmpWeights import DmpWeights
from motorprims.dmp.ImitationLearning import ImitationLearning
from motorprims.scenarios.Metrics import Metrics, METRIC_KEYS
from motorprims.scenarios.ScenarioLibrary import ScenarioLibrary
from motorprims.scenarios.ScenarioRunner import ScenarioRunner
from motorprims.scenarios.ScenarioSpec import ScenarioSpec, CONTROLLERS, SCENARIO_IDS, SPEC_KEYS
from motorprims.Errors import ContractViolationError, MotorPrimsError, ScenarioConfigError


class UsageErrorParser(argparse.ArgumentParser):
    """ argparse exits with 2 on bad flags; that code is reserved for FAILED runs here. """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES.USAGE, '{0}: error: {1}\n'.format(self.prog, message))


class CommandLine:

    @staticmethod
    def build_parser():
        parser = UsageErrorParser(prog='motorprims', description='Run, learn and compare DMP and EDA motor primitives on planar chains.')
        parser.add_argument('--quiet', action='store_true', help='only log warnings and errors')
        commands = parser.add_subparsers(dest='command', required=True)

        run = commands.add_parser('run', help='run one scenario and write its trace and metrics')
        CommandLine.__scenario_arguments(run)
        run.add_argument('--controller', choices=CONTROLLERS.ALL, default=None, help='controller framework (default: the scenario\'s, eda for built-in scenarios)')
        run.add_argument('--variant', default=None, help='named parameter variant of the scenario, e.g. feedforward-only')
        run.add_argument('--weights', default=None, help='DMP weight file to replay instead of learning from the scenario reference')
        run.add_argument('--format', choices=OUTPUT_FORMATS.ALL, default=OUTPUT_FORMATS.CSV, help='trace file format')

        learn = commands.add_parser('learn', help='learn DMP weights from a demonstration CSV')
        learn.add_argument('--demo', required=True, help='demo CSV with columns t, y_0, ydot_0, yddot_0, y_1, ...')
        learn.add_argument('--out', required=True, help='weight JSON to write')
        learn.add_argument('--kind', choices=DMP_KINDS.ALL, default=DMP_KINDS.DISCRETE)
        learn.add_argument('--period', type=float, default=None, help='period of a rhythmic demo in seconds (tau = period / 2 pi)')
        learn.add_argument('--tau', type=float, default=None, help='discrete time constant (default: the demo duration)')
        learn.add_argument('--n-basis', type=int, default=None)
        learn.add_argument('--alpha-z', type=float, default=DMP_DEFAULTS.ALPHA_Z)
        learn.add_argument('--beta-z', type=float, default=DMP_DEFAULTS.BETA_Z)
        learn.add_argument('--alpha-s', type=float, default=DMP_DEFAULTS.ALPHA_S)
        learn.add_argument('--dt', type=float, default=1e-3, help='replay step for the reproduction RMS')

        compare = commands.add_parser('compare', help='run a scenario under both controllers and tabulate the claims')
        CommandLine.__scenario_arguments(compare)
        compare.add_argument('--variant', default=None)
        return parser

    @staticmethod
    def __scenario_arguments(parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--scenario', help='built-in scenario, one of {0}'.format(', '.join(SCENARIO_IDS.cli_name(s) for s in SCENARIO_IDS.ALL)))
        source.add_argument('--spec', help='scenario JSON document')
        parser.add_argument('--dt', type=float, default=None, help='integration step override in seconds')
        parser.add_argument('--out', default='.', help='output directory')

    # ======================================================================================================================================================================================

    @staticmethod
    def load_spec(args, controller=None):
        overrides = {}
        if controller is not None:
            overrides[SPEC_KEYS.CONTROLLER] = controller
        if args.dt is not None:
            overrides[SPEC_KEYS.DT] = args.dt
        if args.scenario is not None:
            return ScenarioLibrary.build_scenario(args.scenario, overrides, variant=args.variant)
        if args.variant is not None:
            raise ScenarioConfigError('--variant only applies to built-in scenarios')
        spec = ScenarioSpec.load(args.spec)
        return ScenarioSpec(ScenarioSpec.apply_overrides(spec.data, overrides))

    @staticmethod
    def cmd_run(args):
        spec = CommandLine.load_spec(args, args.controller)
        weights = None
        if args.weights is not None:
            try:
                weights = DmpWeights.load(args.weights)
            except (OSError, ValueError, KeyError) as err:
                raise ScenarioConfigError('unable to read weight file {0}: {1}'.format(args.weights, err))

        trace = ScenarioRunner.run(spec, weights)
        metrics = Metrics.compute(trace, spec)

        os.makedirs(args.out, exist_ok=True)
        spec.save(os.path.join(args.out, OUTPUT_FILES.SPEC))
        if args.format == OUTPUT_FORMATS.CSV:
            trace.to_csv(os.path.join(args.out, OUTPUT_FILES.TRACE_CSV))
        else:
            trace.to_json(os.path.join(args.out, OUTPUT_FILES.TRACE_JSON))
        Metrics.save(metrics, os.path.join(args.out, OUTPUT_FILES.METRICS))

        if trace.failed:
            print('{0} ({1}) FAILED at t={2:.4f}s: {3}'.format(spec.scenario_id, spec.controller, trace.failure['time'], trace.failure['reason']))
            return EXIT_CODES.FAILED
        print('{0} ({1}) rms={2:.6g} terminal={3:.6g}'.format(spec.scenario_id, spec.controller, metrics[METRIC_KEYS.RMS_TRACKING_ERROR], metrics[METRIC_KEYS.TERMINAL_ERROR]))
        return EXIT_CODES.OK

    @staticmethod
    def cmd_learn(args):
        demo = DemoTrajectory.read_csv(args.demo)
        if args.kind == DMP_KINDS.RHYTHMIC:
            if args.period is None:
                raise ContractViolationError('a rhythmic demo needs --period')
            tau = ImitationLearning.rhythmic_tau(args.period)
        else:
            tau = demo.duration if args.tau is None else args.tau

        canonical = CanonicalSystem(args.kind, tau, args.alpha_s)
        weights = ImitationLearning.learn(demo, canonical, args.alpha_z, args.beta_z, args.n_basis)
        out_dir = os.path.dirname(args.out)
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
        weights.save(args.out)

        rms = ImitationLearning.reproduction_rms(weights, demo, args.dt)
        print('reproduction RMS: {0:.6g}'.format(rms))
        return EXIT_CODES.OK

    @staticmethod
    def cmd_compare(args):
        runs = {}
        for controller in CONTROLLERS.ALL:
            spec = CommandLine.load_spec(args, controller)
            if (spec.dmp if controller == CONTROLLERS.DMP else spec.eda) is None:
                raise ScenarioConfigError('scenario {0} defines no {1} counterpart'.format(spec.scenario_id, controller))
            runs[controller] = Metrics.compute(ScenarioRunner.run(spec), spec)

        table = CommandLine.compare_table(runs)
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, OUTPUT_FILES.COMPARE)
        with open(path, 'w') as fh:
            fh.write(json.dumps(table, indent=2, sort_keys=True))
        log.info('Wrote comparison of [{0}] to [{1}]'.format(table['scenario_id'], path))
        print(json.dumps(table['claims'], indent=2, sort_keys=True))
        return EXIT_CODES.OK

    @staticmethod
    def compare_table(runs):
        """ Per-claim outcome of a DMP run against an EDA run of the same scenario. """
        dmp, eda = runs[CONTROLLERS.DMP], runs[CONTROLLERS.EDA]

        def better(key):
            candidates = {c: m[key] for c, m in runs.items() if m[METRIC_KEYS.FAILURE] is None and m[key] is not None}
            if not candidates:
                return None
            return min(sorted(candidates), key=lambda c: candidates[c])

        claims = {
            'failed': {c: m[METRIC_KEYS.FAILURE] is not None for c, m in runs.items()},
            'lower_rms_tracking_error': better(METRIC_KEYS.RMS_TRACKING_ERROR),
            'lower_terminal_error': better(METRIC_KEYS.TERMINAL_ERROR),
            'faster_convergence': better(METRIC_KEYS.CONVERGENCE_TIME),
            'max_L_c': {c: m[METRIC_KEYS.MAX_L_C] for c, m in runs.items()},
            'min_obstacle_distance': {c: m[METRIC_KEYS.MIN_OBSTACLE_DISTANCE] for c, m in runs.items()},
        }
        return {'scenario_id': eda[METRIC_KEYS.SCENARIO_ID], 'claims': claims, 'runs': {CONTROLLERS.DMP: dmp, CONTROLLERS.EDA: eda}}

    # ======================================================================================================================================================================================

    @staticmethod
    def dispatch(args):
        commands = {'run': CommandLine.cmd_run, 'learn': CommandLine.cmd_learn, 'compare': CommandLine.cmd_compare}
        try:
            return commands[args.command](args)
        except (MotorPrimsError, OSError) as err:
            print('motorprims {0}: {1}'.format(args.command, err), file=sys.stderr)
            return EXIT_CODES.USAGE


def main(argv=None):
    args = CommandLine.build_parser().parse_args(argv)
    log.basicConfig(level=log.WARNING if args.quiet else log.INFO, format='%(asctime)s %(levelname)s %(message)s')
    return CommandLine.dispatch(args)


class EXIT_CODES:
    OK = 0
    USAGE = 1
    FAILED = 2


class OUTPUT_FORMATS:
    CSV = 'csv'
    JSON = 'json'
    ALL = (CSV, JSON)


class OUTPUT_FILES:
    SPEC = 'scenario.json'
    TRACE_CSV = 'trace.csv'
    TRACE_JSON = 'trace.json'
    METRICS = 'metrics.json'
    COMPARE = 'compare.json'


if __name__ == '__main__':
    sys.exit(main())
