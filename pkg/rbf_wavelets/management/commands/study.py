from rbf_wavelets.cli import ActionCommand


class Command(ActionCommand):
    """
    rbf-wavelets study <action> [--config PATH] [--out DIR] [--param KEY=VALUE ...]
    """
    help = 'Convergence study of classic RBF interpolation.'
    group = 'study'
