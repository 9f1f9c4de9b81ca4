from pathlib import Path

from vwebs.codec import dumps


def write_report(command, path, document):
    '''Write a report to `path`, or to the command's stdout.'''
    text = dumps(document)
    if path:
        Path(path).write_text(text)
    else:
        command.stdout.write(text, ending='')
