package evo.billing;

import java.util.List;

@javax.persistence.Entity
public class Invoice {
    private String id;
    private List<Item> items;
    private double total;
}
