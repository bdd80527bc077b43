from rbf_wavelets.cli import ActionCommand


class Command(ActionCommand):
    """
    rbf-wavelets check <action> [--config PATH] [--out DIR] [--param KEY=VALUE ...]
    """
    help = 'Run a verification harness and write its report.'
    group = 'check'
