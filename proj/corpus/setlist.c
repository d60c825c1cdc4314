#include <stdlib.h>

struct lnode {
  int value;
  struct lnode *next;
};

struct set {
  int capacity;
  int size;
  struct lnode *elems;
};

int insert(struct set *s, int x) {
  struct lnode *new_node;
  struct lnode *n;
  struct lnode *end_node;
  if (s == NULL)
    return 0;
  if (s->size >= s->capacity)
    return 0;
  n = s->elems;
  end_node = NULL;
  /*
   * Walk the whole list. An element equal to x
   * means there is nothing to insert; otherwise the
   * new node is linked in front of the current head.
   */
  while (n != NULL) {
    if (n->value == x)
      return 0;
    end_node = n;
    n = n->next;
  }
  new_node = malloc(sizeof(struct lnode));
  new_node->value = x;
  new_node->next = s->elems;
  s->elems = new_node;
  s->size = s->size + 1;
  return 1;
}

int isnull(struct set *s) {
  if (s == NULL)
    return 1;
  return 0;
}

int isempty(struct set *s) {
  if (s != NULL && s->elems == NULL)
    return 1;
  return 0;
}

int isfull(struct set *s) {
  if (s != NULL && s->size >= s->capacity)
    return 1;
  return 0;
}

int contains(struct set *s, int x) {
  struct lnode *n;
  if (s == NULL)
    return 0;
  n = s->elems;
  while (n != NULL) {
    if (n->value == x)
      return 1;
    n = n->next;
  }
  return 0;
}

int length(struct set *s) {
  struct lnode *n;
  int count;
  if (s == NULL)
    return 0;
  count = 0;
  n = s->elems;
  while (n != NULL) {
    count = count + 1;
    n = n->next;
  }
  return count;
}

struct set *new(int capacity) {
  struct set *s;
  s = malloc(sizeof(struct set));
  s->capacity = capacity;
  s->size = 0;
  s->elems = NULL;
  return s;
}
